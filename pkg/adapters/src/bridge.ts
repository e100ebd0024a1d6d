/**
 * Bridge to Python-runtime model families (sentence-transformers, TF-Hub,
 * LASER, InferSent).
 *
 * The bridge process speaks one JSON object per line: a {"op":"ready"} or
 * {"op":"load_error"} banner after startup, then {"vectors"} / {"error"}
 * answers to {"op":"encode"} requests.  Load failures surface as protocol
 * errors on encode; the adapter itself stays alive.
 */

import { ChildProcessByStdio, spawn } from "child_process";
import * as path from "path";
import * as readline from "readline";
import { Readable, Writable } from "stream";
import { EncoderModel } from "./protocol";

type BridgeProcess = ChildProcessByStdio<Writable, Readable, null>;

const BRIDGE_DIR = path.join(__dirname, "..", "bridges");

export interface BridgeSpec {
  name: string;
  dim: number;
  script: string;
  args?: string[];
}

export class PythonBridgeModel implements EncoderModel {
  readonly name: string;
  readonly dim: number;
  private readonly script: string;
  private readonly args: string[];
  private readonly python: string;
  private proc: BridgeProcess | null = null;
  private lines: AsyncIterableIterator<string> | null = null;
  private loadError: string | null = null;
  private ready = false;

  constructor(spec: BridgeSpec, python = process.env.SEMPROBE_PYTHON || "python3") {
    this.name = spec.name;
    this.dim = spec.dim;
    this.script = path.join(BRIDGE_DIR, spec.script);
    this.args = spec.args ?? [];
    this.python = python;
  }

  private async ensure(): Promise<void> {
    if (this.ready) return;
    if (this.loadError) throw new Error(this.loadError);
    let proc: BridgeProcess;
    try {
      proc = spawn(this.python, [this.script, ...this.args], {
        stdio: ["pipe", "pipe", "inherit"],
      });
    } catch (err) {
      this.loadError = `cannot start python runtime: ${String(err)}`;
      throw new Error(this.loadError);
    }
    proc.on("error", () => {
      /* surfaced through the banner read below */
    });
    this.proc = proc;
    const rl = readline.createInterface({ input: proc.stdout, terminal: false });
    this.lines = rl[Symbol.asyncIterator]();
    const banner = await this.readLine("model startup");
    if (banner.op === "ready") {
      this.ready = true;
      return;
    }
    this.loadError = String(banner.error ?? "model failed to load");
    this.proc.kill();
    this.proc = null;
    throw new Error(this.loadError);
  }

  private async readLine(what: string): Promise<any> {
    if (!this.lines) throw new Error(`bridge not started (${what})`);
    const next = await this.lines.next();
    if (next.done) {
      this.loadError = this.loadError ?? `bridge exited during ${what}`;
      throw new Error(this.loadError);
    }
    return JSON.parse(next.value);
  }

  async encode(texts: string[]): Promise<number[][]> {
    await this.ensure();
    this.proc!.stdin.write(JSON.stringify({ op: "encode", texts }) + "\n");
    const response = await this.readLine("encode");
    if (response.error) throw new Error(String(response.error));
    const vectors: number[][] = response.vectors;
    if (!Array.isArray(vectors) || vectors.length !== texts.length) {
      throw new Error("bridge returned a malformed vector list");
    }
    for (const vec of vectors) {
      if (vec.length !== this.dim) {
        throw new Error(`bridge vector dim ${vec.length}, expected ${this.dim}`);
      }
    }
    return vectors;
  }

  close(): void {
    if (this.proc) {
      this.proc.stdin.end();
      this.proc.kill();
      this.proc = null;
    }
  }
}
