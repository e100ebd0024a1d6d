/**
 * Adapter entry point.
 *
 *   node dist/cli.js --model doc2vec_local --corpus train.txt
 *   node dist/cli.js --model sbert_paraphrase_minilm
 *   node dist/cli.js --model use_v4 --http-port 8765
 *
 * Stdio transport by default; --http-port switches to HTTP.  Model weight
 * caches honor SEMPROBE_MODEL_CACHE (exported to the underlying runtimes).
 */

import { DEFAULT_OPTIONS } from "./doc2vec";
import { AdapterConfig, MODEL_NAMES, ModelName, createModel } from "./models";
import { serveHttp, serveStdio } from "./server";

interface CliArgs {
  model: ModelName;
  corpus?: string;
  vectorSize: number;
  window: number;
  minCount: number;
  epochs: number;
  seed: number;
  httpPort?: number;
  device: "cpu" | "accelerator";
}

export function parseArgs(argv: string[]): CliArgs {
  const args: CliArgs = {
    model: "doc2vec_local",
    vectorSize: DEFAULT_OPTIONS.vectorSize,
    window: DEFAULT_OPTIONS.window,
    minCount: DEFAULT_OPTIONS.minCount,
    epochs: DEFAULT_OPTIONS.epochs,
    seed: DEFAULT_OPTIONS.seed,
    device: "cpu",
  };
  let sawModel = false;
  for (let i = 0; i < argv.length; i++) {
    const flag = argv[i];
    const value = () => {
      const v = argv[++i];
      if (v === undefined) throw new Error(`${flag} needs a value`);
      return v;
    };
    switch (flag) {
      case "--model":
        args.model = value() as ModelName;
        sawModel = true;
        break;
      case "--corpus":
        args.corpus = value();
        break;
      case "--vector-size":
        args.vectorSize = Number(value());
        break;
      case "--window":
        args.window = Number(value());
        break;
      case "--min-count":
        args.minCount = Number(value());
        break;
      case "--epochs":
        args.epochs = Number(value());
        break;
      case "--seed":
        args.seed = Number(value());
        break;
      case "--http-port":
        args.httpPort = Number(value());
        break;
      case "--device":
        args.device = value() as "cpu" | "accelerator";
        break;
      default:
        throw new Error(`unknown flag ${flag}`);
    }
  }
  if (!sawModel) throw new Error(`--model is required (one of ${MODEL_NAMES.join(", ")})`);
  return args;
}

export function configFrom(args: CliArgs): AdapterConfig {
  const config: AdapterConfig = { model: args.model, device: args.device };
  if (args.model === "doc2vec_local") {
    if (!args.corpus) throw new Error("doc2vec_local requires --corpus <file>");
    config.doc2vecTrain = {
      vectorSize: args.vectorSize,
      window: args.window,
      minCount: args.minCount,
      epochs: args.epochs,
      corpusPath: args.corpus,
      seed: args.seed,
    };
  }
  return config;
}

async function main(): Promise<void> {
  let args: CliArgs;
  try {
    args = parseArgs(process.argv.slice(2));
  } catch (err) {
    process.stderr.write(`error: ${err instanceof Error ? err.message : String(err)}\n`);
    process.exit(2);
  }
  const model = createModel(configFrom(args));
  if (args.httpPort !== undefined) {
    await serveHttp(model, args.httpPort);
    process.stderr.write(`serving ${model.name} (dim ${model.dim}) on http://127.0.0.1:${args.httpPort}\n`);
  } else {
    await serveStdio(model);
  }
}

if (require.main === module) {
  main().catch((err) => {
    process.stderr.write(`fatal: ${err instanceof Error ? err.message : String(err)}\n`);
    process.exit(1);
  });
}
