/** DOM wiring: renders the store into the page and forwards interactions
 * to the flows.  All values shown here come from state fields that hold
 * service responses verbatim.
 */
import { Client } from "./api.js";
import {
  highlightedPoint,
  loadProblem,
  runSelection,
  runStream,
  setReference,
} from "./flows.js";
import { contourPath, fractionValue, makeScale, panelsFor } from "./plot.js";
import {
  formatFraction,
  initialState,
  isApproximate,
  normPicked,
  oracleToggled,
  pointsEqual,
  snapToInteger,
  type ExplorerState,
  type NormKind,
  type Transition,
} from "./state.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const PANEL_SIZE = 360;

const E1_TEXT = `mcilp-problem v1
n 2 m 5 k 2
A
-1 0
0 -1
1 0
0 1
-1 -1
b
0 0 3 3 -3
F
1 0
0 1
`;

const client = new Client("");
let state = initialState();
let currentId: string | null = null;

function dispatch(transition: Transition): void {
  state = transition(state);
  render(state);
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  text?: string,
  className?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (text !== undefined) {
    node.textContent = text;
  }
  if (className !== undefined) {
    node.className = className;
  }
  return node;
}

function svgEl(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function renderPanels(s: ExplorerState): void {
  const host = byId<HTMLDivElement>("panels");
  host.replaceChildren();
  if (!s.problem) {
    return;
  }
  const highlight = highlightedPoint(s);
  for (const panel of panelsFor(s.problem.k)) {
    const scale = makeScale(
      s.problem.outcome_box,
      panel,
      PANEL_SIZE,
      PANEL_SIZE,
    );
    const wrap = el("figure", undefined, "panel");
    wrap.append(el("figcaption", panel.label));
    const svg = svgEl("svg", {
      width: String(PANEL_SIZE),
      height: String(PANEL_SIZE),
      viewBox: `0 0 ${PANEL_SIZE} ${PANEL_SIZE}`,
    });
    svg.append(
      svgEl("rect", {
        x: "0",
        y: "0",
        width: String(PANEL_SIZE),
        height: String(PANEL_SIZE),
        class: "panel-bg",
      }),
    );

    if (
      highlight &&
      s.reference &&
      s.problem.k === 2 &&
      (s.nearest || s.approx)
    ) {
      const lambda = fractionValue(highlight.value);
      const contourLambda = s.approx ? Math.sqrt(lambda) : lambda;
      svg.append(
        svgEl("path", {
          d: contourPath(
            s.norm.kind,
            [s.reference[panel.xIndex] ?? 0, s.reference[panel.yIndex] ?? 0],
            contourLambda,
            scale,
          ),
          class: "contour",
        }),
      );
    }

    for (const point of s.points) {
      const [px, py] = scale.toPx(
        point[panel.xIndex] ?? 0,
        point[panel.yIndex] ?? 0,
      );
      const isHit = highlight !== null && pointsEqual(point, highlight.point);
      svg.append(
        svgEl("circle", {
          cx: String(px),
          cy: String(py),
          r: isHit ? "7" : "4",
          class: isHit ? "front-point highlight" : "front-point",
        }),
      );
    }

    if (s.ideal) {
      const [px, py] = scale.toPx(
        s.ideal[panel.xIndex] ?? 0,
        s.ideal[panel.yIndex] ?? 0,
      );
      svg.append(
        svgEl("path", {
          d: `M ${px - 6} ${py} L ${px + 6} ${py} M ${px} ${py - 6} L ${px} ${py + 6}`,
          class: "ideal-marker",
        }),
      );
    }

    if (s.reference) {
      const [px, py] = scale.toPx(
        s.reference[panel.xIndex] ?? 0,
        s.reference[panel.yIndex] ?? 0,
      );
      svg.append(
        svgEl("circle", {
          cx: String(px),
          cy: String(py),
          r: "5",
          class: "reference-marker",
        }),
      );
    }

    svg.addEventListener("click", (event) => {
      if (!state.problem) {
        return;
      }
      const rect = (event.currentTarget as SVGElement).getBoundingClientRect();
      const [x, y] = scale.fromPx(
        event.clientX - rect.left,
        event.clientY - rect.top,
      );
      const reference = state.reference
        ? [...state.reference]
        : new Array<number>(state.problem.k).fill(0);
      reference[panel.xIndex] = snapToInteger(x);
      reference[panel.yIndex] = snapToInteger(y);
      void setReference(client, state, reference, dispatch);
    });
    wrap.append(svg);
    host.append(wrap);
  }
}

function renderSelection(s: ExplorerState): void {
  const badge = byId<HTMLDivElement>("result");
  badge.replaceChildren();
  const highlight = highlightedPoint(s);
  if (highlight) {
    const label = s.nearest ? "distance" : "squared value";
    badge.append(
      el("strong", `(${highlight.point.join(", ")})`),
      el("span", ` ${label} ${formatFraction(highlight.value)}`),
    );
  }
  const cert = byId<HTMLDivElement>("certificate");
  cert.replaceChildren();
  if (s.approx) {
    const c = s.approx.certificate;
    cert.append(
      el(
        "code",
        `gamma=${c.gamma} delta=${c.delta} s=${c.s} eps'=${c.eps_prime}`,
      ),
    );
  }
  const verdict = byId<HTMLDivElement>("oracle-verdict");
  verdict.textContent =
    s.oracleVerdict === null
      ? ""
      : s.oracleVerdict === "agrees"
        ? "brute-force check: agrees"
        : "brute-force check: DIFFERS";
  verdict.className = s.oracleVerdict ?? "";

  const list = byId<HTMLOListElement>("ranked");
  list.replaceChildren(
    ...s.ranked.map((record) =>
      el(
        "li",
        `(${record.point.join(", ")})  ${formatFraction(record.distance)}`,
      ),
    ),
  );
}

function renderStatus(s: ExplorerState): void {
  const status = byId<HTMLDivElement>("status");
  const parts: string[] = [];
  if (s.problem) {
    parts.push(`id ${s.problem.id}`, `k=${s.problem.k}`);
    parts.push(`feasible ${s.problem.feasible_count}`);
  }
  if (s.counts) {
    parts.push(
      `pareto ${s.counts.pareto}`,
      `strategies ${s.counts.strategies}`,
    );
  }
  if (s.streaming) {
    parts.push(`streaming… ${s.points.length} so far`);
  } else if (s.problem) {
    parts.push(`${s.points.length} front points`);
  }
  status.textContent = parts.join(" · ");

  const errorBox = byId<HTMLDivElement>("error");
  errorBox.textContent = s.error ?? "";
  const reload = byId<HTMLButtonElement>("reload");
  reload.hidden = s.streamError === null;
  reload.textContent = s.streamError
    ? `stream dropped (${s.streamError}), reload`
    : "reload";

  byId<HTMLInputElement>("eps").disabled = !isApproximate(s.norm.kind);
}

function render(s: ExplorerState): void {
  renderStatus(s);
  renderPanels(s);
  renderSelection(s);
}

function wire(): void {
  const problemText = byId<HTMLTextAreaElement>("problem-text");
  problemText.value = E1_TEXT;

  byId<HTMLButtonElement>("load").addEventListener("click", () => {
    void loadProblem(client, problemText.value, dispatch).then((id) => {
      currentId = id;
    });
  });

  byId<HTMLButtonElement>("reload").addEventListener("click", () => {
    if (currentId) {
      void runStream(client, currentId, dispatch);
    }
  });

  byId<HTMLSelectElement>("norm").addEventListener("change", (event) => {
    const kind = (event.target as HTMLSelectElement).value as NormKind;
    dispatch(normPicked({ ...state.norm, kind }));
    void runSelection(client, state, dispatch);
  });

  byId<HTMLInputElement>("eps").addEventListener("change", (event) => {
    const eps = (event.target as HTMLInputElement).value;
    dispatch(normPicked({ ...state.norm, eps }));
    void runSelection(client, state, dispatch);
  });

  byId<HTMLInputElement>("oracle-check").addEventListener(
    "change",
    (event) => {
      dispatch(oracleToggled((event.target as HTMLInputElement).checked));
      void runSelection(client, state, dispatch);
    },
  );

  const referenceInput = byId<HTMLInputElement>("reference");
  byId<HTMLButtonElement>("set-reference").addEventListener("click", () => {
    if (!state.problem) {
      return;
    }
    const coords = referenceInput.value
      .trim()
      .split(/[\s,]+/)
      .map((token) => snapToInteger(Number(token)));
    if (
      coords.length === state.problem.k &&
      coords.every((x) => Number.isFinite(x))
    ) {
      void setReference(client, state, coords, dispatch);
    }
  });

  render(state);
}

document.addEventListener("DOMContentLoaded", wire);
