/** Node-side transports: raw TCP to the engine's serve port (used by the
 * integration tests and the WebSocket bridge). */

import net from "node:net";

import type { Transport } from "./protocol.js";

export class TcpTransport implements Transport {
  private handlers: ((chunk: Uint8Array) => void)[] = [];

  private constructor(private socket: net.Socket) {
    socket.on("data", (data: Buffer) => {
      const chunk = new Uint8Array(data);
      for (const h of this.handlers) h(chunk);
    });
  }

  static connect(port: number, host = "127.0.0.1"): Promise<TcpTransport> {
    return new Promise((resolve, reject) => {
      const socket = net.createConnection({ port, host }, () => resolve(new TcpTransport(socket)));
      socket.on("error", reject);
    });
  }

  send(data: Uint8Array): void {
    this.socket.write(data);
  }

  onData(cb: (chunk: Uint8Array) => void): void {
    this.handlers.push(cb);
  }

  close(): void {
    this.socket.end();
    this.socket.destroy();
  }
}
