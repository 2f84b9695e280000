/** Binds gestures to the engine connection: every structural edit goes
 * through the protocol and the view is re-rendered only from engine events. */

import { EngineConnection } from "./protocol.js";
import type { Command, EngineEvent } from "./types.js";
import { ViewModel } from "./viewmodel.js";

export class App {
  readonly vm = new ViewModel();
  onChange: (() => void) | null = null;

  constructor(private conn: EngineConnection) {
    conn.onEvent = (ev: EngineEvent) => {
      this.vm.applyEvent(ev);
      if (this.onChange) this.onChange();
    };
  }

  private async dispatch(cmd: Command | null): Promise<EngineEvent | null> {
    if (!cmd) return null;
    return this.conn.send(cmd);
  }

  load(gml: string) {
    return this.dispatch({ cmd: "load", gml });
  }

  runLayout(seed = 0, iterations = 300) {
    return this.dispatch({ cmd: "run_layout", seed, iterations });
  }

  rectangleSelect(x0: number, y0: number, x1: number, y1: number) {
    return this.dispatch(this.vm.rectangleSelect(x0, y0, x1, y1));
  }

  lassoSelect(points: [number, number][]) {
    return this.dispatch(this.vm.lassoSelect(points));
  }

  dragDrop(nodeId: string, x: number, y: number) {
    return this.dispatch(this.vm.dragDrop(nodeId, x, y));
  }

  clickAt(x: number, y: number) {
    return this.dispatch(this.vm.clickAt(x, y));
  }

  moveCluster(clusterId: string, dx: number, dy: number) {
    return this.dispatch({ cmd: "move_cluster", cluster_id: clusterId, dx, dy });
  }

  setLabelPolicy(mode: string, overrides?: Record<string, boolean>) {
    return this.dispatch({ cmd: "set_label_policy", mode, overrides });
  }

  shutdown() {
    return this.dispatch({ cmd: "shutdown" });
  }
}
