/** Minimal deterministic force simulation for the network view.
 *
 * Euler integration with velocity decay and a cooling alpha, the same
 * scheme force-directed graph layouts conventionally use. Deliberately
 * dependency-free and seeded from node ids, so two runs over the same
 * payload produce identical positions, which keeps the layout testable.
 */

export interface SimNode {
  id: string;
  x: number;
  y: number;
  vx: number;
  vy: number;
  /** fixed coordinates: set while dragging or for axis-locked nodes */
  fx: number | null;
  fy: number | null;
  /** per-node anchor pull, used for timeline author attraction */
  anchorX: number | null;
  anchorY: number | null;
  anchorStrength: number;
  /** pinned by the user; survives re-layout until unpinned */
  pinned: boolean;
}

export interface SimLink {
  source: string;
  target: string;
  length: number;
  strength: number;
}

export interface SimulationOptions {
  width: number;
  height: number;
  /** negative repels; scaled per node pair */
  chargeStrength: number;
  velocityDecay?: number;
  alphaDecay?: number;
}

/** Deterministic pseudo-random in [0, 1) from a string seed. */
export function hashUnit(seed: string): number {
  let h = 2166136261;
  for (let k = 0; k < seed.length; k++) {
    h ^= seed.charCodeAt(k);
    h = Math.imul(h, 16777619);
  }
  return ((h >>> 0) % 100_000) / 100_000;
}

export function makeNode(id: string, width: number, height: number): SimNode {
  return {
    id,
    x: width * (0.2 + 0.6 * hashUnit(id)),
    y: height * (0.2 + 0.6 * hashUnit(id + "/y")),
    vx: 0,
    vy: 0,
    fx: null,
    fy: null,
    anchorX: null,
    anchorY: null,
    anchorStrength: 0.1,
    pinned: false,
  };
}

export class Simulation {
  readonly nodes: SimNode[];
  readonly links: SimLink[];
  private readonly options: SimulationOptions;
  private readonly byId: Map<string, SimNode>;
  private alpha = 1;

  constructor(nodes: SimNode[], links: SimLink[], options: SimulationOptions) {
    this.nodes = nodes;
    this.byId = new Map(nodes.map((n) => [n.id, n]));
    this.links = links.filter(
      (l) => this.byId.has(l.source) && this.byId.has(l.target),
    );
    this.options = {
      velocityDecay: 0.6,
      alphaDecay: 0.03,
      ...options,
    };
  }

  node(id: string): SimNode | undefined {
    return this.byId.get(id);
  }

  /** Reheat after a payload or mode change; pinned nodes stay put. */
  restart(): void {
    this.alpha = 1;
  }

  pin(id: string, x: number, y: number): void {
    const node = this.byId.get(id);
    if (!node) return;
    node.pinned = true;
    node.fx = x;
    node.fy = y;
  }

  unpin(id: string): void {
    const node = this.byId.get(id);
    if (!node) return;
    node.pinned = false;
    node.fx = null;
    node.fy = null;
  }

  tick(iterations = 1): void {
    for (let k = 0; k < iterations; k++) this.step();
  }

  private step(): void {
    const { width, height, chargeStrength } = this.options;
    const decay = this.options.velocityDecay ?? 0.6;
    const nodes = this.nodes;

    // pairwise repulsion, inverse-square with a distance floor
    for (let a = 0; a < nodes.length; a++) {
      for (let b = a + 1; b < nodes.length; b++) {
        const na = nodes[a];
        const nb = nodes[b];
        let dx = nb.x - na.x;
        let dy = nb.y - na.y;
        let dist2 = dx * dx + dy * dy;
        if (dist2 === 0) {
          // split coincident nodes deterministically
          dx = 0.1 * (hashUnit(na.id + nb.id) - 0.5 || 0.05);
          dy = 0.1;
          dist2 = dx * dx + dy * dy;
        }
        const dist = Math.sqrt(dist2);
        const force = (this.alpha * chargeStrength) / Math.max(dist2, 100);
        const fx = (dx / dist) * force;
        const fy = (dy / dist) * force;
        na.vx -= fx;
        na.vy -= fy;
        nb.vx += fx;
        nb.vy += fy;
      }
    }

    // link springs toward their target length
    for (const link of this.links) {
      const source = this.byId.get(link.source)!;
      const target = this.byId.get(link.target)!;
      const dx = target.x - source.x;
      const dy = target.y - source.y;
      const dist = Math.sqrt(dx * dx + dy * dy) || 1;
      const displacement = (dist - link.length) / dist;
      const pull = this.alpha * link.strength * displacement;
      source.vx += dx * pull * 0.5;
      source.vy += dy * pull * 0.5;
      target.vx -= dx * pull * 0.5;
      target.vy -= dy * pull * 0.5;
    }

    // per-node anchors and a weak centering force
    for (const node of nodes) {
      if (node.anchorX !== null) {
        node.vx += (node.anchorX - node.x) * node.anchorStrength * this.alpha;
      }
      if (node.anchorY !== null) {
        node.vy += (node.anchorY - node.y) * node.anchorStrength * this.alpha;
      }
      node.vx += (width / 2 - node.x) * 0.002 * this.alpha;
      node.vy += (height / 2 - node.y) * 0.002 * this.alpha;
    }

    // integrate; fixed coordinates win
    for (const node of nodes) {
      node.vx *= decay;
      node.vy *= decay;
      node.x += node.vx;
      node.y += node.vy;
      if (node.fx !== null) {
        node.x = node.fx;
        node.vx = 0;
      }
      if (node.fy !== null) {
        node.y = node.fy;
        node.vy = 0;
      }
      node.x = Math.max(0, Math.min(width, node.x));
      node.y = Math.max(0, Math.min(height, node.y));
    }

    this.alpha = Math.max(
      0.001,
      this.alpha * (1 - (this.options.alphaDecay ?? 0.03)),
    );
  }
}
