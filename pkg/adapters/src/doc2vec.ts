/**
 * Locally trained paragraph vectors (distributed-memory flavor).
 *
 * Training: for every center word, the context is the mean of the document
 * vector and the surrounding word vectors inside a randomly reduced window;
 * the pair is scored against the center word plus k negative samples and
 * the gradient flows back into the document and context word vectors.
 *
 * Inference for unseen text keeps the word and output matrices frozen and
 * fits only a fresh document vector for a fixed number of epochs with a
 * per-text seed, so repeated calls return identical vectors.
 */

import { Rng, hash32 } from "./rng";

export interface Doc2VecOptions {
  vectorSize: number;
  window: number;
  minCount: number;
  epochs: number;
  seed: number;
  negative: number;
  inferEpochs: number;
}

export const DEFAULT_OPTIONS: Doc2VecOptions = {
  vectorSize: 100,
  window: 5,
  minCount: 1,
  epochs: 20,
  seed: 1,
  negative: 5,
  inferEpochs: 50,
};

const ALPHA_START = 0.025;
const ALPHA_MIN = 0.0001;
const UNIGRAM_TABLE_SIZE = 1 << 17;
const MAX_EXP = 6;

export function tokenizeDoc(text: string): string[] {
  return text
    .toLowerCase()
    .split(/\s+/)
    .map((t) => t.replace(/^[^\p{L}\p{N}]+|[^\p{L}\p{N}'-]+$/gu, ""))
    .filter((t) => t.length > 0);
}

function sigmoid(x: number): number {
  if (x > MAX_EXP) return 1;
  if (x < -MAX_EXP) return 0;
  return 1 / (1 + Math.exp(-x));
}

export class Doc2Vec {
  readonly options: Doc2VecOptions;
  private vocab = new Map<string, number>();
  private counts: number[] = [];
  private wordVecs!: Float64Array; // V x D
  private outVecs!: Float64Array; // V x D
  private docVecs!: Float64Array; // N x D
  private unigramTable!: Int32Array;
  private trained = false;

  constructor(options: Partial<Doc2VecOptions> = {}) {
    this.options = { ...DEFAULT_OPTIONS, ...options };
  }

  get vocabSize(): number {
    return this.counts.length;
  }

  get dim(): number {
    return this.options.vectorSize;
  }

  private buildVocab(docs: string[][]): void {
    const raw = new Map<string, number>();
    for (const doc of docs) {
      for (const word of doc) raw.set(word, (raw.get(word) ?? 0) + 1);
    }
    const kept = [...raw.entries()]
      .filter(([, count]) => count >= this.options.minCount)
      .sort((a, b) => b[1] - a[1] || (a[0] < b[0] ? -1 : 1));
    kept.forEach(([word, count], index) => {
      this.vocab.set(word, index);
      this.counts.push(count);
    });
  }

  private buildUnigramTable(): void {
    const power = 0.75;
    const total = this.counts.reduce((acc, c) => acc + Math.pow(c, power), 0);
    this.unigramTable = new Int32Array(UNIGRAM_TABLE_SIZE);
    let index = 0;
    let cumulative = Math.pow(this.counts[0], power) / total;
    for (let i = 0; i < UNIGRAM_TABLE_SIZE; i++) {
      this.unigramTable[i] = index;
      if (i / UNIGRAM_TABLE_SIZE > cumulative && index < this.counts.length - 1) {
        index += 1;
        cumulative += Math.pow(this.counts[index], power) / total;
      }
    }
  }

  private initVector(target: Float64Array, offset: number, rng: Rng): void {
    const d = this.dim;
    for (let j = 0; j < d; j++) {
      target[offset + j] = (rng.next() - 0.5) / d;
    }
  }

  /** One window pass updating the given doc vector slot; optionally frozen
   * word/output matrices (inference). */
  private trainDocument(
    doc: number[],
    docVec: Float64Array,
    docOffset: number,
    alpha: number,
    rng: Rng,
    updateWords: boolean
  ): void {
    const d = this.dim;
    const { window, negative } = this.options;
    const context = new Float64Array(d);
    const gradient = new Float64Array(d);
    for (let pos = 0; pos < doc.length; pos++) {
      const center = doc[pos];
      const reduced = rng.below(window) + 1; // effective window in [1, window]
      const start = Math.max(0, pos - reduced);
      const end = Math.min(doc.length, pos + reduced + 1);
      // context = mean(doc vector, surrounding word vectors)
      context.fill(0);
      let contributors = 0;
      for (let c = start; c < end; c++) {
        if (c === pos) continue;
        const base = doc[c] * d;
        for (let j = 0; j < d; j++) context[j] += this.wordVecs[base + j];
        contributors += 1;
      }
      for (let j = 0; j < d; j++) {
        context[j] = (context[j] + docVec[docOffset + j]) / (contributors + 1);
      }
      gradient.fill(0);
      for (let s = 0; s <= negative; s++) {
        let target: number;
        let label: number;
        if (s === 0) {
          target = center;
          label = 1;
        } else {
          target = this.unigramTable[rng.below(UNIGRAM_TABLE_SIZE)];
          if (target === center) continue;
          label = 0;
        }
        const base = target * d;
        let dot = 0;
        for (let j = 0; j < d; j++) dot += context[j] * this.outVecs[base + j];
        const g = (label - sigmoid(dot)) * alpha;
        for (let j = 0; j < d; j++) {
          gradient[j] += g * this.outVecs[base + j];
          if (updateWords) this.outVecs[base + j] += g * context[j];
        }
      }
      const share = 1 / (contributors + 1);
      for (let j = 0; j < d; j++) docVec[docOffset + j] += gradient[j] * share;
      if (updateWords) {
        for (let c = start; c < end; c++) {
          if (c === pos) continue;
          const base = doc[c] * d;
          for (let j = 0; j < d; j++) this.wordVecs[base + j] += gradient[j] * share;
        }
      }
    }
  }

  train(documents: string[]): void {
    const docs = documents.map(tokenizeDoc);
    this.buildVocab(docs);
    if (this.vocabSize === 0) {
      throw new Error("doc2vec corpus produced an empty vocabulary");
    }
    this.buildUnigramTable();
    const d = this.dim;
    const rng = new Rng(this.options.seed);
    this.wordVecs = new Float64Array(this.vocabSize * d);
    this.outVecs = new Float64Array(this.vocabSize * d);
    this.docVecs = new Float64Array(docs.length * d);
    for (let i = 0; i < this.vocabSize; i++) this.initVector(this.wordVecs, i * d, rng);
    for (let i = 0; i < docs.length; i++) this.initVector(this.docVecs, i * d, rng);
    const indexed = docs.map((doc) => doc.map((w) => this.vocab.get(w)).filter((i): i is number => i !== undefined));
    const totalPasses = this.options.epochs * docs.length;
    let done = 0;
    for (let epoch = 0; epoch < this.options.epochs; epoch++) {
      for (let i = 0; i < indexed.length; i++) {
        const alpha = Math.max(ALPHA_MIN, ALPHA_START * (1 - done / totalPasses));
        this.trainDocument(indexed[i], this.docVecs, i * d, alpha, rng, true);
        done += 1;
      }
    }
    this.trained = true;
  }

  /** Vector for unseen text; deterministic per (model, text). */
  infer(text: string): number[] {
    if (!this.trained) throw new Error("model is not trained");
    const d = this.dim;
    const rng = new Rng((this.options.seed ^ hash32(text)) >>> 0);
    const docVec = new Float64Array(d);
    this.initVector(docVec, 0, rng);
    const indexed = tokenizeDoc(text)
      .map((w) => this.vocab.get(w))
      .filter((i): i is number => i !== undefined);
    if (indexed.length > 0) {
      for (let epoch = 0; epoch < this.options.inferEpochs; epoch++) {
        const alpha = Math.max(ALPHA_MIN, ALPHA_START * (1 - epoch / this.options.inferEpochs));
        this.trainDocument(indexed, docVec, 0, alpha, rng, false);
      }
    }
    return [...docVec];
  }
}
