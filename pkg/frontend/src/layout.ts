/** Network layouts: force-driven cluster mode and year-anchored
 * timeline mode. Both build on the deterministic Simulation; the
 * force constants here are tuned, not derived: a selected-to-selected
 * link rests at 120px shrunk by 1/sqrt(|selected|) and the global
 * repulsion grows linearly with |selected|, so dense selections pull
 * their backbone together instead of exploding.
 */

import { Simulation, makeNode, type SimLink, type SimNode } from "./simulation.js";
import type { NetworkResponse } from "./types.js";

export const SELECTED_LINK_BASE_LENGTH = 120;
export const SUGGESTED_LINK_LENGTH = 45;
export const KEYWORD_LINK_LENGTH = 60;
export const AUTHOR_LINK_LENGTH = 50;
export const CHARGE_PER_SELECTED = -30;
export const TIMELINE_RIGHT_MARGIN = 70;
export const TIMELINE_PADDING = 40;

export interface LayoutSize {
  width: number;
  height: number;
}

export interface PinnedPositions {
  /** keyword group_index -> dragged position, sticky across re-layouts */
  [groupIndex: number]: { x: number; y: number };
}

export function pubNodeId(doi: string): string {
  return `pub:${doi}`;
}

export function keywordNodeId(groupIndex: number): string {
  return `kw:${groupIndex}`;
}

export function authorNodeId(key: string): string {
  return `author:${key}`;
}

export function clusterForceConstants(selectedCount: number): {
  selectedLinkLength: number;
  chargeStrength: number;
} {
  const n = Math.max(1, selectedCount);
  return {
    selectedLinkLength: SELECTED_LINK_BASE_LENGTH / Math.sqrt(n),
    chargeStrength: CHARGE_PER_SELECTED * n,
  };
}

/** Monotone linear year scale across the drawable width. */
export function timelineX(
  year: number,
  domain: [number, number],
  width: number,
  padding: number = TIMELINE_PADDING,
): number {
  const [minYear, maxYear] = domain;
  const usable = width - padding - TIMELINE_RIGHT_MARGIN - padding;
  if (maxYear <= minYear) return padding + usable / 2;
  const t = (year - minYear) / (maxYear - minYear);
  return padding + t * usable;
}

export function yearDomain(network: NetworkResponse): [number, number] {
  const years = network.pub_nodes
    .map((p) => p.year)
    .filter((y): y is number => y !== null);
  if (years.length === 0) return [0, 0];
  return [Math.min(...years), Math.max(...years)];
}

export interface NetworkLayout {
  simulation: Simulation;
  /** link class per simulation link index, for styling */
  linkKinds: string[];
}

function buildNodes(network: NetworkResponse, size: LayoutSize): SimNode[] {
  const nodes: SimNode[] = [];
  for (const pub of network.pub_nodes) {
    nodes.push(makeNode(pubNodeId(pub.doi), size.width, size.height));
  }
  for (const keyword of network.keyword_nodes) {
    nodes.push(makeNode(keywordNodeId(keyword.group_index), size.width, size.height));
  }
  for (const author of network.author_nodes) {
    nodes.push(makeNode(authorNodeId(author.author_key), size.width, size.height));
  }
  return nodes;
}

function buildLinks(
  network: NetworkResponse,
  selectedLinkLength: number,
): { links: SimLink[]; kinds: string[] } {
  const selected = new Set(
    network.pub_nodes.filter((p) => p.selected).map((p) => p.doi),
  );
  const links: SimLink[] = [];
  const kinds: string[] = [];
  for (const edge of network.citation_edges) {
    const backbone = selected.has(edge.from) && selected.has(edge.to);
    links.push({
      source: pubNodeId(edge.from),
      target: pubNodeId(edge.to),
      length: backbone ? selectedLinkLength : SUGGESTED_LINK_LENGTH,
      strength: backbone ? 0.7 : 0.3,
    });
    kinds.push(backbone ? "link-backbone" : "link-citation");
  }
  for (const edge of network.keyword_edges) {
    links.push({
      source: keywordNodeId(edge.group_index),
      target: pubNodeId(edge.doi),
      length: KEYWORD_LINK_LENGTH,
      strength: 0.2,
    });
    kinds.push("link-keyword");
  }
  for (const edge of network.author_edges) {
    links.push({
      source: authorNodeId(edge.author_key),
      target: pubNodeId(edge.doi),
      length: AUTHOR_LINK_LENGTH,
      strength: 0.2,
    });
    kinds.push("link-author");
  }
  return { links, kinds };
}

function applyPins(
  simulation: Simulation,
  network: NetworkResponse,
  pinned: PinnedPositions,
): void {
  for (const keyword of network.keyword_nodes) {
    const position = pinned[keyword.group_index];
    if (position) {
      simulation.pin(keywordNodeId(keyword.group_index), position.x, position.y);
    }
  }
}

export function buildClusterLayout(
  network: NetworkResponse,
  size: LayoutSize,
  pinned: PinnedPositions = {},
): NetworkLayout {
  const selectedCount = network.pub_nodes.filter((p) => p.selected).length;
  const constants = clusterForceConstants(selectedCount);
  const nodes = buildNodes(network, size);
  const { links, kinds } = buildLinks(network, constants.selectedLinkLength);
  const simulation = new Simulation(nodes, links, {
    width: size.width,
    height: size.height,
    chargeStrength: constants.chargeStrength,
  });
  applyPins(simulation, network, pinned);
  return { simulation, linkKinds: kinds };
}

export function buildTimelineLayout(
  network: NetworkResponse,
  size: LayoutSize,
  pinned: PinnedPositions = {},
): NetworkLayout {
  const selectedCount = network.pub_nodes.filter((p) => p.selected).length;
  const constants = clusterForceConstants(selectedCount);
  const nodes = buildNodes(network, size);
  const { links, kinds } = buildLinks(network, constants.selectedLinkLength);
  const simulation = new Simulation(nodes, links, {
    width: size.width,
    height: size.height,
    chargeStrength: constants.chargeStrength / 2,
  });

  const domain = yearDomain(network);
  for (const pub of network.pub_nodes) {
    const node = simulation.node(pubNodeId(pub.doi))!;
    // publications sit on the year scale; unknown years park at the left edge
    node.fx =
      pub.year === null
        ? TIMELINE_PADDING / 2
        : timelineX(pub.year, domain, size.width);
  }
  const keywordSlot = size.height / (network.keyword_nodes.length + 1);
  network.keyword_nodes.forEach((keyword, position) => {
    const node = simulation.node(keywordNodeId(keyword.group_index))!;
    // keywords line up in the right margin unless dragged elsewhere
    node.fx = size.width - TIMELINE_RIGHT_MARGIN / 2;
    node.y = keywordSlot * (position + 1);
  });
  for (const author of network.author_nodes) {
    const node = simulation.node(authorNodeId(author.author_key))!;
    if (author.center_year !== null) {
      node.anchorX = timelineX(author.center_year, domain, size.width);
      node.anchorStrength = 0.15;
    }
  }
  applyPins(simulation, network, pinned);
  return { simulation, linkKinds: kinds };
}
