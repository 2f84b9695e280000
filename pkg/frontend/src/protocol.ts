/** Length-delimited JSON framing and the engine connection.
 *
 * Frame layout mirrors the engine: an ASCII line with the payload byte
 * length, the UTF-8 JSON payload, then one newline separator.
 */

import type { Command, EngineEvent } from "./types.js";

export interface Transport {
  send(data: Uint8Array): void;
  onData(cb: (chunk: Uint8Array) => void): void;
  close(): void;
}

const encoder = new TextEncoder();
const decoder = new TextDecoder();

export function encodeFrame(message: unknown): Uint8Array {
  const payload = encoder.encode(JSON.stringify(message));
  const header = encoder.encode(`${payload.length}\n`);
  const frame = new Uint8Array(header.length + payload.length + 1);
  frame.set(header, 0);
  frame.set(payload, header.length);
  frame[frame.length - 1] = 0x0a;
  return frame;
}

/** Incremental frame decoder; feed chunks, collect whole messages. */
export class FrameDecoder {
  private buffer = new Uint8Array(0);

  push(chunk: Uint8Array): unknown[] {
    const merged = new Uint8Array(this.buffer.length + chunk.length);
    merged.set(this.buffer, 0);
    merged.set(chunk, this.buffer.length);
    this.buffer = merged;

    const messages: unknown[] = [];
    for (;;) {
      const nl = this.buffer.indexOf(0x0a);
      if (nl === -1) break;
      const header = decoder.decode(this.buffer.subarray(0, nl));
      const length = Number.parseInt(header, 10);
      if (!Number.isFinite(length) || length < 0) {
        throw new Error(`invalid frame header: ${JSON.stringify(header)}`);
      }
      const end = nl + 1 + length;
      if (this.buffer.length < end + 1) break; // wait for payload + separator
      const payload = decoder.decode(this.buffer.subarray(nl + 1, end));
      this.buffer = this.buffer.subarray(end + 1);
      messages.push(JSON.parse(payload));
    }
    return messages;
  }
}

/**
 * Engine connection with at most one structural command in flight; further
 * commands queue until the engine answers.
 */
export class EngineConnection {
  private decoder = new FrameDecoder();
  private queue: { command: Command; resolve: (ev: EngineEvent) => void }[] = [];
  private inFlight: ((ev: EngineEvent) => void) | null = null;
  onEvent: ((ev: EngineEvent) => void) | null = null;

  constructor(private transport: Transport) {
    transport.onData((chunk) => {
      for (const msg of this.decoder.push(chunk)) {
        this.handleEvent(msg as EngineEvent);
      }
    });
  }

  get pendingCount(): number {
    return this.queue.length + (this.inFlight ? 1 : 0);
  }

  send(command: Command): Promise<EngineEvent> {
    return new Promise((resolve) => {
      this.queue.push({ command, resolve });
      this.pump();
    });
  }

  private pump(): void {
    if (this.inFlight || this.queue.length === 0) return;
    const { command, resolve } = this.queue.shift()!;
    this.inFlight = resolve;
    this.transport.send(encodeFrame(command));
  }

  private handleEvent(ev: EngineEvent): void {
    const resolve = this.inFlight;
    this.inFlight = null;
    if (this.onEvent) this.onEvent(ev);
    if (resolve) resolve(ev);
    this.pump();
  }

  close(): void {
    this.transport.close();
  }
}
