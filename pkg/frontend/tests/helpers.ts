import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { encodeFrame, FrameDecoder, type Transport } from "../src/protocol.js";
import type { EngineEvent, LayoutDocument } from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));

export function loadFixture(name = "small_state.json"): LayoutDocument {
  return JSON.parse(readFileSync(join(here, "fixtures", name), "utf-8"));
}

/** Scripted transport: records decoded commands; the test replies by hand. */
export class FakeTransport implements Transport {
  sentFrames: unknown[] = [];
  private decoder = new FrameDecoder();
  private handler: ((chunk: Uint8Array) => void) | null = null;
  closed = false;

  send(data: Uint8Array): void {
    this.sentFrames.push(...this.decoder.push(data));
  }

  onData(cb: (chunk: Uint8Array) => void): void {
    this.handler = cb;
  }

  reply(event: EngineEvent): void {
    this.handler?.(encodeFrame(event));
  }

  close(): void {
    this.closed = true;
  }
}
