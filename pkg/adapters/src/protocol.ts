/**
 * Wire protocol shared with the evaluation harness.
 *
 * One JSON object per line (stdio) or per HTTP POST body:
 *   {"op": "info"}                                   -> {"name", "dim"}
 *   {"id", "op": "encode", "texts": ["...", ...]}    -> {"id", "dim", "vectors"}
 * Failures answer {"id"?, "error": "<message>"} and never kill the server.
 */

export interface EncoderModel {
  readonly name: string;
  readonly dim: number;
  encode(texts: string[]): Promise<number[][]>;
  close?(): void;
}

export interface InfoResponse {
  name: string;
  dim: number;
}

export interface EncodeResponse {
  id: unknown;
  dim: number;
  vectors: number[][];
}

export interface ErrorResponse {
  id?: unknown;
  error: string;
}

export type Response = InfoResponse | EncodeResponse | ErrorResponse;

export async function handleRequest(model: EncoderModel, raw: string): Promise<Response> {
  let request: any;
  try {
    request = JSON.parse(raw);
  } catch (err) {
    return { error: `bad request JSON: ${String(err)}` };
  }
  if (request === null || typeof request !== "object" || Array.isArray(request)) {
    return { error: "request must be a JSON object" };
  }
  if (request.op === "info") {
    return { name: model.name, dim: model.dim };
  }
  if (request.op === "encode") {
    const texts = request.texts;
    if (!Array.isArray(texts) || !texts.every((t: unknown) => typeof t === "string")) {
      return { id: request.id, error: "texts must be a list of strings" };
    }
    try {
      const vectors = await model.encode(texts);
      return { id: request.id, dim: model.dim, vectors };
    } catch (err) {
      return { id: request.id, error: err instanceof Error ? err.message : String(err) };
    }
  }
  return { id: request.id, error: `unknown op ${JSON.stringify(request.op)}` };
}
