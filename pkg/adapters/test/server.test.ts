import * as fs from "fs";
import * as os from "os";
import * as path from "path";
import { PassThrough } from "stream";
import { afterAll, describe, expect, it } from "vitest";
import { configFrom, parseArgs } from "../src/cli";
import { createModel, modelDim, validateConfig } from "../src/models";
import { serveHttp, serveStdio } from "../src/server";

const CORPUS_LINES = [
  "the young dog ran across the green park",
  "a small dog ran through the quiet park",
  "markets rallied as traders bought shares",
  "investors sold shares when the market fell",
  "rain fell softly over the sleeping village",
  "the storm flooded the river near the village",
];

function corpusFile(): string {
  const file = path.join(os.tmpdir(), `d2v-corpus-${process.pid}.txt`);
  fs.writeFileSync(file, CORPUS_LINES.join("\n") + "\n");
  return file;
}

function doc2vecModel() {
  return createModel({
    model: "doc2vec_local",
    device: "cpu",
    doc2vecTrain: {
      vectorSize: 100,
      window: 5,
      minCount: 1,
      epochs: 5,
      corpusPath: corpusFile(),
      seed: 3,
    },
  });
}

/** Golden transcript: handshake, encode, malformed line, bad op. The same
 * exchange the evaluation harness's own stub tests use. */
async function runTranscript(send: (line: string) => Promise<any>) {
  const info = await send(JSON.stringify({ op: "info" }));
  expect(info).toEqual({ name: "doc2vec_local", dim: 100 });

  const encode = await send(JSON.stringify({ id: "r1", op: "encode", texts: ["dogs ran in the park", "markets fell"] }));
  expect(encode.id).toBe("r1");
  expect(encode.dim).toBe(100);
  expect(encode.vectors).toHaveLength(2);
  expect(encode.vectors[0]).toHaveLength(100);

  const repeat = await send(JSON.stringify({ id: "r2", op: "encode", texts: ["dogs ran in the park"] }));
  for (let i = 0; i < 100; i++) {
    expect(Math.abs(repeat.vectors[0][i] - encode.vectors[0][i])).toBeLessThanOrEqual(1e-6);
  }

  const garbage = await send("{{{");
  expect(typeof garbage.error).toBe("string");

  const bad = await send(JSON.stringify({ id: "r3", op: "nope" }));
  expect(bad.id).toBe("r3");
  expect(typeof bad.error).toBe("string");
}

describe("stdio transport", () => {
  it("serves the golden transcript and survives malformed input", async () => {
    const input = new PassThrough();
    const output = new PassThrough();
    const done = serveStdio(doc2vecModel(), input, output);

    const pending: Array<(obj: any) => void> = [];
    let buffer = "";
    output.on("data", (chunk) => {
      buffer += chunk.toString();
      let idx;
      while ((idx = buffer.indexOf("\n")) >= 0) {
        const line = buffer.slice(0, idx);
        buffer = buffer.slice(idx + 1);
        pending.shift()?.(JSON.parse(line));
      }
    });
    const send = (line: string) =>
      new Promise<any>((resolve) => {
        pending.push(resolve);
        input.write(line + "\n");
      });

    await runTranscript(send);
    input.end();
    await done;
  }, 30000);
});

describe("http transport", () => {
  let server: import("http").Server | undefined;

  afterAll(() => {
    server?.close();
  });

  it("serves the golden transcript over POST", async () => {
    server = await serveHttp(doc2vecModel(), 0);
    const address = server.address() as import("net").AddressInfo;
    const url = `http://127.0.0.1:${address.port}/`;
    const send = async (line: string) => {
      const response = await fetch(url, { method: "POST", body: line });
      return response.json();
    };
    await runTranscript(send);

    const wrongMethod = await fetch(url, { method: "GET" });
    expect(wrongMethod.status).toBe(405);
  }, 30000);
});

describe("config and cli parsing", () => {
  it("registry dims match the published model families", () => {
    expect(modelDim("sbert_paraphrase_minilm")).toBe(384);
    expect(modelDim("use_v4")).toBe(512);
    expect(modelDim("infersent_v1_glove")).toBe(4096);
    expect(modelDim("laser")).toBe(1024);
    expect(modelDim("doc2vec_local")).toBe(100);
  });

  it("doc2vec settings are required exactly for doc2vec_local", () => {
    expect(() => validateConfig({ model: "doc2vec_local", device: "cpu" })).toThrow(/doc2vec/);
    expect(() =>
      validateConfig({
        model: "laser",
        device: "cpu",
        doc2vecTrain: { vectorSize: 100, window: 5, minCount: 1, epochs: 20, corpusPath: "x", seed: 1 },
      })
    ).toThrow(/only valid/);
  });

  it("cli args map onto the adapter config", () => {
    const args = parseArgs(["--model", "doc2vec_local", "--corpus", "c.txt", "--epochs", "9", "--seed", "4"]);
    const config = configFrom(args);
    expect(config.doc2vecTrain).toMatchObject({ corpusPath: "c.txt", epochs: 9, seed: 4, vectorSize: 100 });
    expect(() => parseArgs(["--model", "doc2vec_local", "--bogus"])).toThrow(/unknown flag/);
    expect(() => configFrom(parseArgs(["--model", "doc2vec_local"]))).toThrow(/--corpus/);
    expect(() => parseArgs([])).toThrow(/--model is required/);
  });

  it("pretrained families answer the handshake without loading weights", async () => {
    const model = createModel({ model: "sbert_paraphrase_minilm", device: "cpu" });
    expect(model.name).toBe("sbert_paraphrase_minilm");
    expect(model.dim).toBe(384);
    model.close?.();
  });
});
