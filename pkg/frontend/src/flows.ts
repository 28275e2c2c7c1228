/** Async orchestration between the service client and the state store.
 *
 * Flows take the client as an interface so tests can drive them with a
 * scripted fake; nothing in here computes outcome values, it only moves
 * service responses into state.
 */
import type {
  Client,
  FptasResponse,
  NearestResponse,
  PointRecord,
  RankRecord,
} from "./api.js";
import {
  approxResolved,
  countsLoaded,
  failed,
  idealResolved,
  isApproximate,
  nearestResolved,
  normSpec,
  oracleCompared,
  pointArrived,
  pointsEqual,
  problemLoaded,
  rankedArrived,
  rankedReset,
  referenceSet,
  streamFailed,
  streamFinished,
  streamStarted,
  type ExplorerState,
  type Transition,
} from "./state.js";

export type Dispatch = (transition: Transition) => void;

export type ServiceLike = Pick<
  Client,
  | "uploadProblem"
  | "fetchCount"
  | "streamFront"
  | "nearest"
  | "rank"
  | "fptas"
  | "ideal"
  | "oracleNearest"
  | "oracleFptas"
>;

function message(error: unknown): string {
  return error instanceof Error ? error.message : String(error);
}

/** Upload, fetch the headline counts and the ideal point, then stream the
 * front.  Returns the problem id, or null when the upload was rejected. */
export async function loadProblem(
  service: ServiceLike,
  text: string,
  dispatch: Dispatch,
): Promise<string | null> {
  let meta;
  try {
    meta = await service.uploadProblem(text);
  } catch (error) {
    dispatch(failed(message(error)));
    return null;
  }
  dispatch(problemLoaded(meta));
  try {
    const counts = await service.fetchCount(meta.id);
    dispatch(countsLoaded(String(counts.pareto), String(counts.strategies)));
    const ideal = await service.ideal(meta.id);
    dispatch(idealResolved(ideal.point));
  } catch (error) {
    dispatch(failed(message(error)));
  }
  await runStream(service, meta.id, dispatch);
  return meta.id;
}

/** Consume the front stream record by record; rerunning after a failure
 * replaces the partial point set (the reload path for dropped streams). */
export async function runStream(
  service: ServiceLike,
  id: string,
  dispatch: Dispatch,
): Promise<void> {
  dispatch(streamStarted());
  try {
    for await (const record of service.streamFront(id)) {
      dispatch(pointArrived(record.point));
    }
    dispatch(streamFinished());
  } catch (error) {
    dispatch(streamFailed(message(error)));
  }
}

/** Set the reference point and refresh the selection panels. */
export async function setReference(
  service: ServiceLike,
  state: ExplorerState,
  point: number[],
  dispatch: Dispatch,
): Promise<void> {
  dispatch(referenceSet(point));
  await runSelection(service, { ...state, reference: point }, dispatch);
}

/** Query nearest (exact or approximate) plus the ranked list, and run the
 * brute-force cross-check when the toggle is on. */
export async function runSelection(
  service: ServiceLike,
  state: ExplorerState,
  dispatch: Dispatch,
): Promise<void> {
  if (!state.problem || !state.reference) {
    return;
  }
  const id = state.problem.id;
  const spec = normSpec(state.norm, state.problem.k);
  try {
    if (isApproximate(state.norm.kind)) {
      const response = await service.fptas(id, {
        pseudo: spec,
        point: state.reference,
        eps: state.norm.eps,
      });
      dispatch(approxResolved(response));
      if (state.oracleCheck) {
        const reference = await service.oracleFptas(id, {
          pseudo: spec,
          point: state.reference,
          eps: state.norm.eps,
        });
        dispatch(oracleCompared(reference.qvalue === response.qvalue));
      }
    } else {
      const response = await service.nearest(id, {
        norm: spec,
        point: state.reference,
      });
      dispatch(nearestResolved(response));
      dispatch(rankedReset());
      for await (const record of service.rank(id, {
        norm: spec,
        point: state.reference,
      })) {
        dispatch(rankedArrived(record));
      }
      if (state.oracleCheck) {
        const reference = await service.oracleNearest(id, {
          norm: spec,
          point: state.reference,
        });
        dispatch(
          oracleCompared(
            reference.distance === response.distance &&
              pointsEqual(reference.point, response.point),
          ),
        );
      }
    }
  } catch (error) {
    dispatch(failed(message(error)));
  }
}

/** The outcome the selection panels should highlight, if any. */
export function highlightedPoint(
  state: ExplorerState,
): { point: number[]; value: string } | null {
  if (state.nearest) {
    return { point: state.nearest.point, value: state.nearest.distance };
  }
  if (state.approx) {
    return { point: state.approx.point, value: state.approx.qvalue };
  }
  return null;
}

export type { FptasResponse, NearestResponse, PointRecord, RankRecord };
