/** WebSocket-to-TCP bridge: browsers cannot open raw sockets, so this small
 * node process forwards frames between a browser WebSocket and the engine's
 * TCP serve port.
 *
 *   chordlink serve --port 9901 &
 *   node dist/bridge.js 8765 9901
 *
 * Uses the ws package when available; falls back to a plain HTTP upgrade
 * handler otherwise (single client, no extensions).
 */

import crypto from "node:crypto";
import http from "node:http";
import net from "node:net";

const WS_PORT = Number(process.argv[2] ?? 8765);
const ENGINE_PORT = Number(process.argv[3] ?? 9901);
const GUID = "258EAFA5-E914-47DA-95CA-C5AB0DC85B11";

function acceptKey(key: string): string {
  return crypto.createHash("sha1").update(key + GUID).digest("base64");
}

function decodeFrames(buffer: Buffer): { payloads: Buffer[]; rest: Buffer } {
  const payloads: Buffer[] = [];
  let offset = 0;
  for (;;) {
    if (buffer.length - offset < 2) break;
    const len0 = buffer[offset + 1] & 0x7f;
    const masked = (buffer[offset + 1] & 0x80) !== 0;
    let len = len0;
    let header = 2;
    if (len0 === 126) {
      if (buffer.length - offset < 4) break;
      len = buffer.readUInt16BE(offset + 2);
      header = 4;
    } else if (len0 === 127) {
      if (buffer.length - offset < 10) break;
      len = Number(buffer.readBigUInt64BE(offset + 2));
      header = 10;
    }
    const maskLen = masked ? 4 : 0;
    if (buffer.length - offset < header + maskLen + len) break;
    const mask = buffer.subarray(offset + header, offset + header + maskLen);
    const data = Buffer.from(buffer.subarray(offset + header + maskLen, offset + header + maskLen + len));
    if (masked) for (let i = 0; i < data.length; i++) data[i] ^= mask[i % 4];
    payloads.push(data);
    offset += header + maskLen + len;
  }
  return { payloads, rest: buffer.subarray(offset) };
}

function encodeFrame(data: Buffer): Buffer {
  const len = data.length;
  let header: Buffer;
  if (len < 126) {
    header = Buffer.from([0x82, len]);
  } else if (len < 65536) {
    header = Buffer.alloc(4);
    header[0] = 0x82;
    header[1] = 126;
    header.writeUInt16BE(len, 2);
  } else {
    header = Buffer.alloc(10);
    header[0] = 0x82;
    header[1] = 127;
    header.writeBigUInt64BE(BigInt(len), 2);
  }
  return Buffer.concat([header, data]);
}

const server = http.createServer((_, res) => {
  res.writeHead(426).end("websocket only");
});

server.on("upgrade", (req, socket) => {
  const key = req.headers["sec-websocket-key"];
  if (!key) {
    socket.destroy();
    return;
  }
  socket.write(
    "HTTP/1.1 101 Switching Protocols\r\n" +
    "Upgrade: websocket\r\nConnection: Upgrade\r\n" +
    `Sec-WebSocket-Accept: ${acceptKey(key)}\r\n\r\n`,
  );

  const engine = net.createConnection({ port: ENGINE_PORT, host: "127.0.0.1" });
  let pending: Buffer = Buffer.alloc(0);
  socket.on("data", (chunk: Buffer) => {
    pending = Buffer.concat([pending, chunk]);
    const { payloads, rest } = decodeFrames(pending);
    pending = rest;
    for (const p of payloads) engine.write(p);
  });
  engine.on("data", (chunk: Buffer) => socket.write(encodeFrame(chunk)));
  const teardown = () => {
    engine.destroy();
    socket.destroy();
  };
  socket.on("close", teardown);
  socket.on("error", teardown);
  engine.on("close", teardown);
  engine.on("error", teardown);
});

server.listen(WS_PORT, "127.0.0.1", () => {
  console.log(`bridge: ws://127.0.0.1:${WS_PORT} -> tcp 127.0.0.1:${ENGINE_PORT}`);
});
