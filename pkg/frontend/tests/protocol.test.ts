import { describe, expect, it } from "vitest";

import { encodeFrame, EngineConnection, FrameDecoder } from "../src/protocol.js";
import { FakeTransport } from "./helpers.js";

describe("framing", () => {
  it("round-trips messages through encode/decode", () => {
    const decoder = new FrameDecoder();
    const a = { cmd: "load", gml: "graph [ ]" };
    const b = { event: "state", document: { version: 1 } };
    const merged = new Uint8Array([...encodeFrame(a), ...encodeFrame(b)]);
    expect(decoder.push(merged)).toEqual([a, b]);
  });

  it("handles chunked input across frame boundaries", () => {
    const decoder = new FrameDecoder();
    const msg = { cmd: "move_node", node: "x", x: 1.5, y: -2 };
    const frame = encodeFrame(msg);
    const got: unknown[] = [];
    for (const byte of frame) got.push(...decoder.push(new Uint8Array([byte])));
    expect(got).toEqual([msg]);
  });

  it("counts bytes, not characters, for unicode payloads", () => {
    const decoder = new FrameDecoder();
    const msg = { cmd: "load", gml: 'node [ label "café" ]' };
    expect(decoder.push(encodeFrame(msg))).toEqual([msg]);
  });

  it("rejects garbage headers", () => {
    const decoder = new FrameDecoder();
    const bytes = new TextEncoder().encode("not-a-length\n{}");
    expect(() => decoder.push(bytes)).toThrow(/frame header/);
  });
});

describe("EngineConnection", () => {
  it("keeps at most one command in flight and queues the rest", () => {
    const transport = new FakeTransport();
    const conn = new EngineConnection(transport);
    conn.send({ cmd: "collapse", cluster_id: "c0" });
    conn.send({ cmd: "expand", cluster_id: "c0" });
    conn.send({ cmd: "collapse", cluster_id: "c1" });
    expect(transport.sentFrames).toHaveLength(1);
    expect(conn.pendingCount).toBe(3);

    transport.reply({ event: "state", document: { version: 1 } as never });
    expect(transport.sentFrames).toHaveLength(2);
    transport.reply({ event: "state", document: { version: 1 } as never });
    transport.reply({ event: "state", document: { version: 1 } as never });
    expect(transport.sentFrames).toHaveLength(3);
    expect(conn.pendingCount).toBe(0);
    expect(transport.sentFrames[1]).toEqual({ cmd: "expand", cluster_id: "c0" });
  });

  it("resolves each send with its matching event", async () => {
    const transport = new FakeTransport();
    const conn = new EngineConnection(transport);
    const first = conn.send({ cmd: "collapse", cluster_id: "c0" });
    const second = conn.send({ cmd: "expand", cluster_id: "c0" });
    transport.reply({ event: "error", message: "nope" });
    transport.reply({ event: "state", document: { version: 1 } as never });
    await expect(first).resolves.toEqual({ event: "error", message: "nope" });
    await expect(second).resolves.toMatchObject({ event: "state" });
  });
});
