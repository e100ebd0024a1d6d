/** Stdio and HTTP transports over the protocol handler. */

import * as http from "http";
import * as readline from "readline";
import { EncoderModel, handleRequest } from "./protocol";

/**
 * Serve newline-delimited JSON over stdin/stdout. Requests are answered
 * strictly in arrival order.
 */
export function serveStdio(
  model: EncoderModel,
  input: NodeJS.ReadableStream = process.stdin,
  output: NodeJS.WritableStream = process.stdout
): Promise<void> {
  const rl = readline.createInterface({ input, terminal: false });
  let chain: Promise<void> = Promise.resolve();
  return new Promise((resolve) => {
    rl.on("line", (line) => {
      if (!line.trim()) return;
      chain = chain.then(async () => {
        const response = await handleRequest(model, line);
        output.write(JSON.stringify(response) + "\n");
      });
    });
    rl.on("close", () => {
      void chain.then(() => {
        model.close?.();
        resolve();
      });
    });
  });
}

/** Serve the same bodies over HTTP POST; returns the listening server. */
export function serveHttp(model: EncoderModel, port: number, host = "127.0.0.1"): Promise<http.Server> {
  const server = http.createServer((req, res) => {
    if (req.method !== "POST") {
      res.writeHead(405, { "Content-Type": "application/json" });
      res.end(JSON.stringify({ error: "POST only" }));
      return;
    }
    const chunks: Buffer[] = [];
    req.on("data", (chunk) => chunks.push(chunk));
    req.on("end", () => {
      void handleRequest(model, Buffer.concat(chunks).toString("utf-8")).then((response) => {
        const body = JSON.stringify(response);
        res.writeHead(200, { "Content-Type": "application/json", "Content-Length": Buffer.byteLength(body) });
        res.end(body);
      });
    });
  });
  return new Promise((resolve) => {
    server.listen(port, host, () => resolve(server));
  });
}
