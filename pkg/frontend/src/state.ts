/** Explorer state and its pure transitions.
 *
 * The state holds service responses verbatim; transitions only copy them in.
 * The single place values are transformed is presentation (formatFraction),
 * which rewrites the string "p/1" as "p" without arithmetic.
 */
import type {
  FptasResponse,
  NearestResponse,
  ProblemMeta,
  RankRecord,
} from "./api.js";

export type NormKind = "linf" | "l1" | "euclid";

export interface NormChoice {
  kind: NormKind;
  /** Accuracy for the approximate mode, as the exact text sent to the
   * service (for example "0.1"). */
  eps: string;
}

export interface ExplorerState {
  problem: ProblemMeta | null;
  counts: { pareto: string; strategies: string } | null;
  points: number[][];
  streaming: boolean;
  streamError: string | null;
  reference: number[] | null;
  norm: NormChoice;
  nearest: NearestResponse | null;
  approx: FptasResponse | null;
  ranked: RankRecord[];
  ideal: number[] | null;
  oracleCheck: boolean;
  oracleVerdict: "agrees" | "differs" | null;
  error: string | null;
}

export function initialState(): ExplorerState {
  return {
    problem: null,
    counts: null,
    points: [],
    streaming: false,
    streamError: null,
    reference: null,
    norm: { kind: "linf", eps: "0.1" },
    nearest: null,
    approx: null,
    ranked: [],
    ideal: null,
    oracleCheck: false,
    oracleVerdict: null,
    error: null,
  };
}

export type Transition = (state: ExplorerState) => ExplorerState;

export function problemLoaded(meta: ProblemMeta): Transition {
  return () => ({ ...initialState(), problem: meta });
}

export function countsLoaded(pareto: string, strategies: string): Transition {
  return (s) => ({ ...s, counts: { pareto, strategies } });
}

export function streamStarted(): Transition {
  return (s) => ({ ...s, points: [], streaming: true, streamError: null });
}

export function pointArrived(point: number[]): Transition {
  return (s) => ({ ...s, points: [...s.points, point] });
}

export function streamFinished(): Transition {
  return (s) => ({ ...s, streaming: false });
}

export function streamFailed(message: string): Transition {
  return (s) => ({ ...s, streaming: false, streamError: message });
}

export function referenceSet(point: number[]): Transition {
  return (s) => ({
    ...s,
    reference: point,
    nearest: null,
    approx: null,
    ranked: [],
    oracleVerdict: null,
  });
}

export function normPicked(norm: NormChoice): Transition {
  return (s) => ({
    ...s,
    norm,
    nearest: null,
    approx: null,
    ranked: [],
    oracleVerdict: null,
  });
}

export function nearestResolved(response: NearestResponse): Transition {
  return (s) => ({ ...s, nearest: response, approx: null, error: null });
}

export function approxResolved(response: FptasResponse): Transition {
  return (s) => ({ ...s, approx: response, nearest: null, error: null });
}

export function rankedReset(): Transition {
  return (s) => ({ ...s, ranked: [] });
}

export function rankedArrived(record: RankRecord): Transition {
  return (s) => ({ ...s, ranked: [...s.ranked, record] });
}

export function idealResolved(point: number[]): Transition {
  return (s) => ({ ...s, ideal: point });
}

export function oracleToggled(on: boolean): Transition {
  return (s) => ({ ...s, oracleCheck: on, oracleVerdict: null });
}

export function oracleCompared(agrees: boolean): Transition {
  return (s) => ({ ...s, oracleVerdict: agrees ? "agrees" : "differs" });
}

export function failed(message: string): Transition {
  return (s) => ({ ...s, error: message });
}

/** The reference point is constrained to the integer grid. */
export function snapToInteger(value: number): number {
  return Math.round(value);
}

export function isApproximate(kind: NormKind): boolean {
  return kind === "euclid";
}

function euclideanMonomials(k: number): string {
  const parts: string[] = [];
  for (let i = 0; i < k; i++) {
    const exps = Array.from({ length: k }, (_, j) => (j === i ? 2 : 0));
    parts.push(`1:${exps.join(",")}`);
  }
  return parts.join(";");
}

/** Textual norm specification in the service's format. */
export function normSpec(choice: NormChoice, k: number): string {
  switch (choice.kind) {
    case "linf":
      return "linf";
    case "l1":
      return "l1";
    case "euclid": {
      // the lower sandwich constant must stay below k^(-1/2)
      const alpha = k <= 2 ? "7/10" : "5/9";
      return `pseudo 2 ${euclideanMonomials(k)} ${alpha} 1`;
    }
  }
}

/** Display form of an exact rational: "8/4" stays verbatim, "2/1" -> "2". */
export function formatFraction(value: string): string {
  const slash = value.indexOf("/");
  if (slash >= 0 && value.slice(slash + 1) === "1") {
    return value.slice(0, slash);
  }
  return value;
}

export function pointsEqual(a: number[], b: number[]): boolean {
  return a.length === b.length && a.every((x, i) => x === b[i]);
}
