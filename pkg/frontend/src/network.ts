/** SVG rendering of the citation network in either layout mode. */

import {
  authorNodeId,
  buildClusterLayout,
  buildTimelineLayout,
  keywordNodeId,
  pubNodeId,
  type LayoutSize,
  type NetworkLayout,
  type PinnedPositions,
} from "./layout.js";
import type { NetworkResponse } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export type LayoutMode = "cluster" | "timeline";

export interface NetworkHandlers {
  onPublicationClick(doi: string): void;
  onKeywordPinned(groupIndex: number, x: number, y: number): void;
}

export interface NetworkView {
  svg: SVGSVGElement;
  layout: NetworkLayout;
  /** advance the simulation and move the rendered elements */
  tick(iterations?: number): void;
}

function pubRadius(score: number): number {
  return 6 + Math.min(10, Math.sqrt(score) * 2);
}

export function renderNetwork(
  network: NetworkResponse,
  mode: LayoutMode,
  size: LayoutSize,
  pinned: PinnedPositions,
  handlers: NetworkHandlers,
  doc: Document = document,
): NetworkView {
  const layout =
    mode === "cluster"
      ? buildClusterLayout(network, size, pinned)
      : buildTimelineLayout(network, size, pinned);
  const { simulation } = layout;

  const svg = doc.createElementNS(SVG_NS, "svg") as SVGSVGElement;
  svg.setAttribute("viewBox", `0 0 ${size.width} ${size.height}`);
  svg.classList.add("network-svg", `mode-${mode}`);

  const linkGroup = doc.createElementNS(SVG_NS, "g");
  linkGroup.setAttribute("class", "links");
  svg.appendChild(linkGroup);
  const lines: SVGLineElement[] = [];
  simulation.links.forEach((link, index) => {
    const line = doc.createElementNS(SVG_NS, "line") as SVGLineElement;
    line.setAttribute("class", layout.linkKinds[index]);
    line.dataset.source = link.source;
    line.dataset.target = link.target;
    linkGroup.appendChild(line);
    lines.push(line);
  });

  const nodeGroup = doc.createElementNS(SVG_NS, "g");
  nodeGroup.setAttribute("class", "nodes");
  svg.appendChild(nodeGroup);
  const moveable: { id: string; element: SVGGElement }[] = [];

  for (const pub of network.pub_nodes) {
    const id = pubNodeId(pub.doi);
    const group = doc.createElementNS(SVG_NS, "g") as SVGGElement;
    group.setAttribute(
      "class",
      "node node-pub" +
        (pub.selected ? " node-selected" : " node-suggested") +
        (pub.unread ? " node-unread" : ""),
    );
    group.dataset.doi = pub.doi;
    const circle = doc.createElementNS(SVG_NS, "circle");
    circle.setAttribute("r", String(pubRadius(pub.score.s)));
    group.appendChild(circle);
    const label = doc.createElementNS(SVG_NS, "text");
    label.textContent = String(pub.score.s);
    label.setAttribute("class", "node-score");
    group.appendChild(label);
    const title = doc.createElementNS(SVG_NS, "title");
    title.textContent = `${pub.doi}${pub.year !== null ? ` (${pub.year})` : ""}`;
    group.appendChild(title);
    group.addEventListener("click", () => handlers.onPublicationClick(pub.doi));
    nodeGroup.appendChild(group);
    moveable.push({ id, element: group });
  }

  for (const keyword of network.keyword_nodes) {
    const id = keywordNodeId(keyword.group_index);
    const group = doc.createElementNS(SVG_NS, "g") as SVGGElement;
    group.setAttribute("class", "node node-keyword");
    group.dataset.groupIndex = String(keyword.group_index);
    const box = doc.createElementNS(SVG_NS, "rect");
    box.setAttribute("width", "70");
    box.setAttribute("height", "18");
    box.setAttribute("x", "-35");
    box.setAttribute("y", "-9");
    group.appendChild(box);
    const label = doc.createElementNS(SVG_NS, "text");
    label.textContent = keyword.label;
    group.appendChild(label);
    // drag-to-pin: position is sticky until the node is double-clicked
    group.addEventListener("pointerup", (event) => {
      const point = event as PointerEvent;
      simulation.pin(id, point.offsetX, point.offsetY);
      handlers.onKeywordPinned(keyword.group_index, point.offsetX, point.offsetY);
    });
    group.addEventListener("dblclick", () => simulation.unpin(id));
    nodeGroup.appendChild(group);
    moveable.push({ id, element: group });
  }

  for (const author of network.author_nodes) {
    const id = authorNodeId(author.author_key);
    const group = doc.createElementNS(SVG_NS, "g") as SVGGElement;
    group.setAttribute("class", "node node-author");
    const circle = doc.createElementNS(SVG_NS, "circle");
    circle.setAttribute("r", "9");
    group.appendChild(circle);
    const label = doc.createElementNS(SVG_NS, "text");
    label.textContent = author.initials;
    group.appendChild(label);
    nodeGroup.appendChild(group);
    moveable.push({ id, element: group });
  }

  const place = () => {
    for (const { id, element } of moveable) {
      const node = simulation.node(id);
      if (!node) continue;
      element.setAttribute(
        "transform",
        `translate(${node.x.toFixed(1)}, ${node.y.toFixed(1)})`,
      );
    }
    simulation.links.forEach((link, index) => {
      const source = simulation.node(link.source)!;
      const target = simulation.node(link.target)!;
      const line = lines[index];
      line.setAttribute("x1", source.x.toFixed(1));
      line.setAttribute("y1", source.y.toFixed(1));
      line.setAttribute("x2", target.x.toFixed(1));
      line.setAttribute("y2", target.y.toFixed(1));
    });
  };

  const tick = (iterations = 1) => {
    simulation.tick(iterations);
    place();
  };
  tick(0);

  return { svg, layout, tick };
}
