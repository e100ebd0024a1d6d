/**
 * Model family registry.
 *
 * doc2vec_local trains in-process on a user corpus; the pretrained families
 * run behind Python-runtime bridges and answer protocol errors when their
 * weights cannot be obtained (offline hosts).  Handshake dims are fixed
 * registry constants so `{"op":"info"}` works before any model loads.
 */

import * as fs from "fs";
import { BridgeSpec, PythonBridgeModel } from "./bridge";
import { Doc2Vec, DEFAULT_OPTIONS } from "./doc2vec";
import { EncoderModel } from "./protocol";

export const MODEL_NAMES = [
  "sbert_paraphrase_minilm",
  "sbert_nli_distilroberta",
  "use_v4",
  "infersent_v1_glove",
  "laser",
  "doc2vec_local",
] as const;

export type ModelName = (typeof MODEL_NAMES)[number];

export interface Doc2VecTrainConfig {
  vectorSize: number;
  window: number;
  minCount: number;
  epochs: number;
  corpusPath: string;
  seed: number;
}

export interface AdapterConfig {
  model: ModelName;
  device: "cpu" | "accelerator";
  doc2vecTrain?: Doc2VecTrainConfig;
}

const BRIDGES: Record<Exclude<ModelName, "doc2vec_local">, BridgeSpec> = {
  sbert_paraphrase_minilm: {
    name: "sbert_paraphrase_minilm",
    dim: 384,
    script: "sbert_bridge.py",
    args: ["paraphrase-MiniLM-L6-v2"],
  },
  sbert_nli_distilroberta: {
    name: "sbert_nli_distilroberta",
    dim: 768,
    script: "sbert_bridge.py",
    args: ["nli-distilroberta-base-v2"],
  },
  use_v4: { name: "use_v4", dim: 512, script: "use_bridge.py" },
  infersent_v1_glove: { name: "infersent_v1_glove", dim: 4096, script: "infersent_bridge.py" },
  laser: { name: "laser", dim: 1024, script: "laser_bridge.py" },
};

export function modelDim(name: ModelName): number {
  if (name === "doc2vec_local") return DEFAULT_OPTIONS.vectorSize;
  return BRIDGES[name].dim;
}

export function validateConfig(config: AdapterConfig): void {
  if (!MODEL_NAMES.includes(config.model)) {
    throw new Error(`unknown model ${JSON.stringify(config.model)}`);
  }
  if (config.model === "doc2vec_local" && !config.doc2vecTrain) {
    throw new Error("doc2vec_local requires doc2vec training settings (corpus path)");
  }
  if (config.model !== "doc2vec_local" && config.doc2vecTrain) {
    throw new Error(`doc2vec training settings are only valid for doc2vec_local, not ${config.model}`);
  }
}

class Doc2VecModel implements EncoderModel {
  readonly name = "doc2vec_local";
  readonly dim: number;
  private readonly inner: Doc2Vec;

  constructor(train: Doc2VecTrainConfig) {
    this.inner = new Doc2Vec({
      vectorSize: train.vectorSize,
      window: train.window,
      minCount: train.minCount,
      epochs: train.epochs,
      seed: train.seed,
    });
    this.dim = this.inner.dim;
    const text = fs.readFileSync(train.corpusPath, "utf-8");
    const documents = text.split("\n").filter((line) => line.trim().length > 0);
    this.inner.train(documents);
  }

  async encode(texts: string[]): Promise<number[][]> {
    return texts.map((t) => this.inner.infer(t));
  }
}

export function createModel(config: AdapterConfig): EncoderModel {
  validateConfig(config);
  if (config.model === "doc2vec_local") {
    return new Doc2VecModel(config.doc2vecTrain!);
  }
  return new PythonBridgeModel(BRIDGES[config.model]);
}
