import { describe, expect, it } from "vitest";
import { Doc2Vec, tokenizeDoc } from "../src/doc2vec";

const CORPUS = [
  "the young dog ran across the green park",
  "a small dog ran through the quiet park",
  "the dog chased a ball in the park",
  "markets rallied as traders bought shares",
  "the stock market closed higher on heavy trading",
  "investors sold shares when the market fell",
  "she cooked a warm meal in the small kitchen",
  "the chef cooked dinner for the hungry guests",
  "fresh bread baked slowly in the old kitchen",
  "rain fell softly over the sleeping village",
  "the storm flooded the river near the village",
  "wind and rain battered the coastal town",
];

function cosine(a: number[], b: number[]): number {
  let dot = 0;
  let na = 0;
  let nb = 0;
  for (let i = 0; i < a.length; i++) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return dot / Math.sqrt(na * nb);
}

function train(overrides = {}): Doc2Vec {
  const model = new Doc2Vec({ seed: 7, epochs: 20, ...overrides });
  model.train(CORPUS);
  return model;
}

describe("tokenizeDoc", () => {
  it("lowercases and strips edge punctuation", () => {
    expect(tokenizeDoc('The dog ran, "fast!"')).toEqual(["the", "dog", "ran", "fast"]);
  });

  it("keeps internal apostrophes and hyphens", () => {
    expect(tokenizeDoc("it's a well-known fact")).toEqual(["it's", "a", "well-known", "fact"]);
  });
});

describe("Doc2Vec", () => {
  it("defaults match the documented training settings", () => {
    const model = new Doc2Vec();
    expect(model.options.vectorSize).toBe(100);
    expect(model.options.window).toBe(5);
    expect(model.options.minCount).toBe(1);
    expect(model.options.epochs).toBe(20);
    expect(model.options.inferEpochs).toBe(50);
  });

  it("infers vectors of the configured dimension", () => {
    const model = train();
    const vec = model.infer("the dog ran in the park");
    expect(vec).toHaveLength(100);
    expect(vec.every((x) => Number.isFinite(x))).toBe(true);
  });

  it("inference is deterministic per text", () => {
    const model = train();
    const a = model.infer("traders bought shares in the market");
    const b = model.infer("traders bought shares in the market");
    expect(a).toEqual(b);
  });

  it("same seed reproduces training exactly", () => {
    const a = train().infer("the dog ran in the park");
    const b = train().infer("the dog ran in the park");
    expect(a).toEqual(b);
  });

  it("different seeds give different embeddings", () => {
    const a = train({ seed: 7 }).infer("the dog ran");
    const b = train({ seed: 8 }).infer("the dog ran");
    expect(a).not.toEqual(b);
  });

  it("places in-domain text closer to its topic than to another topic", () => {
    const model = train({ epochs: 40 });
    const dog = model.infer("the dog ran across the park");
    const dogAgain = model.infer("a dog ran through the park");
    const market = model.infer("investors sold shares on the market");
    expect(cosine(dog, dogAgain)).toBeGreaterThan(cosine(dog, market));
  });

  it("min_count filters the vocabulary", () => {
    const model = new Doc2Vec({ seed: 1, minCount: 3 });
    model.train(CORPUS);
    expect(model.vocabSize).toBeLessThan(train().vocabSize);
  });

  it("handles fully out-of-vocabulary text", () => {
    const model = train();
    const vec = model.infer("zzz qqq www");
    expect(vec).toHaveLength(100);
    expect(model.infer("zzz qqq www")).toEqual(vec);
  });

  it("rejects an empty corpus", () => {
    const model = new Doc2Vec();
    expect(() => model.train([])).toThrow(/empty vocabulary/);
  });
});
