import { describe, expect, it } from "vitest";
import { EncoderModel, handleRequest } from "../src/protocol";

const toy: EncoderModel = {
  name: "toy",
  dim: 3,
  async encode(texts) {
    return texts.map((t) => [t.length, 1, 0]);
  },
};

const failing: EncoderModel = {
  name: "broken",
  dim: 3,
  async encode() {
    throw new Error("weights not obtainable");
  },
};

describe("handleRequest", () => {
  it("answers the handshake with name and dim", async () => {
    expect(await handleRequest(toy, JSON.stringify({ op: "info" }))).toEqual({ name: "toy", dim: 3 });
  });

  it("answers encode in order with one vector per text", async () => {
    const response: any = await handleRequest(
      toy,
      JSON.stringify({ id: "r1", op: "encode", texts: ["ab", "abcd"] })
    );
    expect(response.id).toBe("r1");
    expect(response.dim).toBe(3);
    expect(response.vectors).toEqual([
      [2, 1, 0],
      [4, 1, 0],
    ]);
  });

  it("answers malformed JSON with an error object", async () => {
    const response: any = await handleRequest(toy, "this is { not json");
    expect(typeof response.error).toBe("string");
  });

  it("rejects non-object requests", async () => {
    const response: any = await handleRequest(toy, JSON.stringify(["nope"]));
    expect(response.error).toMatch(/object/);
  });

  it("rejects non-string texts", async () => {
    const response: any = await handleRequest(
      toy,
      JSON.stringify({ id: 1, op: "encode", texts: ["ok", 7] })
    );
    expect(response.id).toBe(1);
    expect(response.error).toMatch(/strings/);
  });

  it("rejects unknown ops, echoing the id", async () => {
    const response: any = await handleRequest(toy, JSON.stringify({ id: "x", op: "train" }));
    expect(response.id).toBe("x");
    expect(response.error).toMatch(/unknown op/);
  });

  it("maps model failures to protocol errors", async () => {
    const response: any = await handleRequest(
      failing,
      JSON.stringify({ id: "r9", op: "encode", texts: ["hello"] })
    );
    expect(response.id).toBe("r9");
    expect(response.error).toMatch(/weights not obtainable/);
  });
});
