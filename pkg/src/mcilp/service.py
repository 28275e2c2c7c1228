"""Local HTTP facade over the engine: upload a problem once, then count,
stream, and run selection queries against its cached encodings.

Single-process, thread-per-request.  Uploaded problems live in a lock-guarded
LRU cache keyed by the hash of their canonical serialization, so re-uploading
the same problem (in any whitespace dress) returns the same id and reuses the
already-built encodings.  Responses carry no Date or Server headers and all
JSON is emitted with sorted keys: identical queries produce identical bytes.

Number formatting: exact rationals are always strings "p/q" (including "2/1");
integers stay JSON numbers unless they could lose precision in a 64-bit float
reader, in which case they are decimal strings.
"""

import hashlib
import json
import mimetypes
import os
import threading
from collections import OrderedDict, namedtuple
from fractions import Fraction
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from . import oracle
from .enumeration import TermOrder, enumerate_support
from .errors import (
    DimensionMismatch,
    EmptyPolyhedron,
    EmptySet,
    NegativeMoment,
    ParseError,
    TooLarge,
    UnboundedPolyhedron,
)
from .genfunc import gf_of_polytope, specialize_count
from .pareto import compute_handles, format_problem, parse_problem
from .select import (
    OddLp,
    PolyhedralNorm,
    PseudoNorm,
    enumerate_by_distance,
    fptas_nearest_pseudonorm,
    nearest_odd_lp,
    nearest_polyhedral,
    parse_norm,
)

Entry = namedtuple("Entry", "problem handles feasible_count")

_SAFE_INT = 2 ** 53


class _LRUCache:
    """Insertion-refreshing LRU map, safe under concurrent requests."""

    def __init__(self, capacity=64):
        self._data = OrderedDict()
        self._lock = threading.Lock()
        self._capacity = capacity

    def get(self, key):
        with self._lock:
            entry = self._data.get(key)
            if entry is not None:
                self._data.move_to_end(key)
            return entry

    def put(self, key, entry):
        with self._lock:
            self._data[key] = entry
            self._data.move_to_end(key)
            while len(self._data) > self._capacity:
                self._data.popitem(last=False)


CACHE = _LRUCache()


def _dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _frac(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _num(v):
    v = int(v)
    return v if -_SAFE_INT < v < _SAFE_INT else str(v)


def _point_json(point):
    return [_num(x) for x in point]


def _point_from_json(value, k):
    if not isinstance(value, list) or len(value) != k:
        raise DimensionMismatch(f"point must be a list of {k} integers")
    out = []
    for x in value:
        if isinstance(x, bool) or not isinstance(x, int):
            raise DimensionMismatch("point coordinates must be integers")
        out.append(x)
    return tuple(out)


def _order_from_text(text, p):
    if text is None or text.strip() in ("", "I"):
        return TermOrder.lex(p)
    rows = []
    for raw in text.replace(";", "\n").splitlines():
        raw = raw.replace(",", " ").strip()
        if not raw:
            continue
        try:
            rows.append(tuple(int(x) for x in raw.split()))
        except ValueError:
            raise ParseError(f"bad order matrix row {raw!r}") from None
    if not rows:
        raise ParseError("empty order matrix")
    order = TermOrder(rows)
    if order.p != p:
        raise DimensionMismatch(
            f"order matrix is {order.p}x{order.p}, need {p}x{p}")
    return order


def _eps_from_json(value):
    if isinstance(value, bool) or value is None:
        raise ParseError("eps must be a rational in (0, 1)")
    try:
        if isinstance(value, str) and "/" in value:
            a, b = value.split("/")
            eps = Fraction(int(a), int(b))
        else:
            eps = Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {value!r}") from None
    if not 0 < eps < 1:
        raise DimensionMismatch("eps must be in (0, 1)")
    return eps


def _radius(entry, vhat=()):
    box = entry.handles.box
    m = max(max(abs(x) for x in box.lower), max(abs(x) for x in box.upper))
    return max([m] + [abs(x) for x in vhat])


class _HTTPFail(Exception):
    def __init__(self, status, message):
        super().__init__(message)
        self.status = status


class Handler(BaseHTTPRequestHandler):
    # close-delimited bodies, one connection per request: a streamed
    # response needs no length up front and ends unambiguously at EOF
    protocol_version = "HTTP/1.0"

    def log_message(self, fmt, *args):
        pass

    # -- plumbing -----------------------------------------------------

    def _reply(self, status, payload):
        body = (_dumps(payload) + "\n").encode()
        self.send_response_only(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _start_stream(self):
        self.send_response_only(200)
        self.send_header("Content-Type", "application/x-ndjson")
        self.end_headers()

    def _send_record(self, payload):
        self.wfile.write((_dumps(payload) + "\n").encode())
        self.wfile.flush()

    def _read_body(self):
        try:
            length = int(self.headers.get("Content-Length", "0"))
        except ValueError:
            raise _HTTPFail(400, "bad Content-Length") from None
        return self.rfile.read(length) if length > 0 else b""

    def _json_body(self):
        raw = self._read_body()
        if not raw:
            return {}
        try:
            body = json.loads(raw)
        except ValueError:
            raise _HTTPFail(400, "request body is not valid JSON") from None
        if not isinstance(body, dict):
            raise _HTTPFail(400, "request body must be a JSON object")
        return body

    # -- dispatch -----------------------------------------------------

    def do_GET(self):
        self._route("GET")

    def do_POST(self):
        self._route("POST")

    def _route(self, method):
        try:
            self._route_inner(method)
        except _HTTPFail as e:
            self._reply(e.status, {"error": str(e)})
        except ParseError as e:
            self._reply(400, {"error": str(e)})
        except (EmptyPolyhedron, EmptySet) as e:
            self._reply(409, {"error": str(e)})
        except (UnboundedPolyhedron, DimensionMismatch, NegativeMoment,
                TooLarge, ValueError) as e:
            self._reply(422, {"error": str(e)})
        except (BrokenPipeError, ConnectionResetError):
            pass

    def _route_inner(self, method):
        url = urlparse(self.path)
        if method == "GET" and self._serve_static(url.path):
            return
        parts = [p for p in url.path.split("/") if p]
        if method == "POST" and parts == ["problems"]:
            return self._upload()
        if len(parts) >= 3 and parts[0] == "problems":
            entry = CACHE.get(parts[1])
            if entry is None:
                raise _HTTPFail(404, f"unknown problem id {parts[1]}")
            tail = parts[2:]
            if method == "GET":
                query = parse_qs(url.query)
                if tail == ["pareto", "count"]:
                    return self._count(entry)
                if tail == ["pareto", "stream"]:
                    return self._stream(entry, query)
                if tail == ["ideal"]:
                    return self._ideal(entry)
            if method == "POST":
                body = self._json_body()
                if tail == ["nearest"]:
                    return self._nearest(entry, body)
                if tail == ["rank"]:
                    return self._rank(entry, body)
                if tail == ["fptas"]:
                    return self._fptas(entry, body)
                if len(tail) == 2 and tail[0] == "oracle":
                    return self._oracle(entry, tail[1], body)
        raise _HTTPFail(404, f"no such endpoint: {method} {url.path}")

    def _serve_static(self, path):
        """Serve the explorer page and its compiled modules when the server
        was given a UI directory; returns False when the path is not ours."""
        root = getattr(self.server, "ui_root", None)
        if root is None:
            return False
        rel = "index.html" if path in ("/", "/index.html") else path.lstrip("/")
        if rel != "index.html" and not rel.startswith("dist/"):
            return False
        full = os.path.realpath(os.path.join(root, rel))
        if full != root and not full.startswith(root + os.sep):
            raise _HTTPFail(404, f"no such file: {path}")
        try:
            with open(full, "rb") as fh:
                body = fh.read()
        except OSError:
            raise _HTTPFail(404, f"no such file: {path}") from None
        ctype = mimetypes.guess_type(full)[0] or "application/octet-stream"
        self.send_response_only(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)
        return True

    # -- endpoints ----------------------------------------------------

    def _upload(self):
        text = self._read_body().decode("utf-8", errors="replace")
        problem = parse_problem(text)
        canonical = format_problem(problem)
        pid = hashlib.sha256(canonical.encode()).hexdigest()[:16]
        entry = CACHE.get(pid)
        if entry is None:
            handles = compute_handles(problem)
            feasible = specialize_count(
                gf_of_polytope(problem.polyhedron(), assume_bounded=True))
            entry = Entry(problem, handles, feasible)
            CACHE.put(pid, entry)
        box = entry.handles.box
        self._reply(200, {
            "id": pid,
            "n": entry.problem.n,
            "m": entry.problem.m,
            "k": entry.problem.k,
            "outcome_box": {
                "lower": _point_json(box.lower),
                "upper": _point_json(box.upper),
            },
            "feasible_count": _num(entry.feasible_count),
        })

    def _count(self, entry):
        h = entry.handles
        self._reply(200, {
            "pareto": _num(specialize_count(h.g_pareto)),
            "strategies": _num(specialize_count(h.g_strategies)),
        })

    def _query_scalar(self, query, key):
        values = query.get(key, [])
        if len(values) > 1:
            raise _HTTPFail(400, f"duplicate query parameter {key}")
        return values[0] if values else None

    def _stream(self, entry, query):
        k = entry.problem.k
        order = _order_from_text(self._query_scalar(query, "order"), k)
        raw_limit = self._query_scalar(query, "limit")
        try:
            limit = None if raw_limit is None else int(raw_limit)
        except ValueError:
            raise _HTTPFail(400, f"bad limit {raw_limit!r}") from None
        points = enumerate_support(entry.handles.g_pareto, order,
                                   _radius(entry))
        self._start_stream()
        for i, w in enumerate(points):
            if limit is not None and i >= limit:
                break
            self._send_record({"point": _point_json(w)})

    def _selection_args(self, entry, body, spec_key):
        spec = body.get(spec_key)
        if not isinstance(spec, str):
            raise _HTTPFail(400, f"missing {spec_key} specification")
        norm = parse_norm(spec, entry.problem.k)
        vhat = _point_from_json(body.get("point"), entry.problem.k)
        return norm, vhat, _radius(entry, vhat)

    def _nearest(self, entry, body):
        norm, vhat, M = self._selection_args(entry, body, "norm")
        if not isinstance(norm, PolyhedralNorm):
            raise DimensionMismatch(
                "nearest needs a polyhedral norm; use fptas for pseudo-norms")
        order = _order_from_text(body.get("order"), entry.problem.k)
        point, d = nearest_polyhedral(entry.handles.g_pareto, norm, vhat, M,
                                      order)
        self._reply(200, {"point": _point_json(point), "distance": _frac(d)})

    def _rank(self, entry, body):
        norm, vhat, M = self._selection_args(entry, body, "norm")
        if not isinstance(norm, PolyhedralNorm):
            raise DimensionMismatch(
                "rank needs a polyhedral norm; use fptas for pseudo-norms")
        order = _order_from_text(body.get("order"), entry.problem.k)
        limit = body.get("limit")
        if limit is not None and (isinstance(limit, bool)
                                  or not isinstance(limit, int)):
            raise _HTTPFail(400, "limit must be an integer")
        ranked = enumerate_by_distance(entry.handles.g_pareto, norm, vhat, M,
                                       order)
        self._start_stream()
        for i, (point, d) in enumerate(ranked):
            if limit is not None and i >= limit:
                break
            self._send_record(
                {"point": _point_json(point), "distance": _frac(d)})

    def _fptas(self, entry, body):
        norm, vhat, M = self._selection_args(entry, body, "pseudo")
        eps = _eps_from_json(body.get("eps"))
        if isinstance(norm, PseudoNorm):
            res = fptas_nearest_pseudonorm(entry.handles.g_pareto, norm, vhat,
                                           eps, M)
        elif isinstance(norm, OddLp):
            res = nearest_odd_lp(entry.handles.g_pareto, norm.p, vhat, eps, M)
        else:
            raise DimensionMismatch(
                "fptas needs a pseudo-norm; use nearest for polyhedral norms")
        c = res.certificate
        self._reply(200, {
            "point": _point_json(res.point),
            "qvalue": _frac(res.qvalue),
            "certificate": {
                "gamma": _num(c["gamma"]),
                "delta": _frac(c["delta"]),
                "s": _num(c["s"]),
                "eps_prime": _frac(c["eps_prime"]),
            },
        })

    def _ideal(self, entry):
        from .pareto import ideal_point
        self._reply(200, {"point": _point_json(ideal_point(entry.problem))})

    # -- brute-force mirrors -------------------------------------------

    def _oracle(self, entry, which, body):
        inst = oracle.Instance("service", entry.problem)
        k = entry.problem.k
        if which == "count":
            return self._reply(200, {
                "pareto": _num(len(inst.pareto_set())),
                "strategies": _num(len(inst.strategy_set())),
            })
        if which == "ideal":
            return self._reply(200, {"point": _point_json(inst.ideal_point())})
        if which == "stream":
            order = _order_from_text(body.get("order"), k)
            self._start_stream()
            for w in order.sort(inst.pareto_set()):
                self._send_record({"point": _point_json(w)})
            return
        if which in ("nearest", "fptas"):
            spec_key = "pseudo" if which == "fptas" else "norm"
            norm, vhat, _ = self._selection_args(entry, body, spec_key)
            point, d = oracle.oracle_nearest(inst.pareto_set(), norm, vhat)
            value_key = "qvalue" if which == "fptas" else "distance"
            return self._reply(200, {
                "point": _point_json(point), value_key: _frac(d)})
        if which == "rank":
            norm, vhat, _ = self._selection_args(entry, body, "norm")
            measure = norm.distance if isinstance(norm, PolyhedralNorm) \
                else norm.value
            front = inst.pareto_set()
            if not front:
                raise EmptySet("no points to rank")
            ranked = sorted(
                (Fraction(measure(tuple(a - b for a, b in zip(p, vhat)))), p)
                for p in front)
            self._start_stream()
            for d, point in ranked:
                self._send_record(
                    {"point": _point_json(point), "distance": _frac(d)})
            return
        raise _HTTPFail(404, f"no such oracle endpoint: {which}")


def make_server(port=0, host="127.0.0.1", ui_root=None):
    """Bind and return the server without starting it (port 0 picks a free
    one); callers drive serve_forever themselves.  When ui_root names a
    directory, its index.html and dist/ files are served at / alongside the
    JSON endpoints."""
    server = ThreadingHTTPServer((host, port), Handler)
    server.ui_root = os.path.realpath(ui_root) if ui_root is not None else None
    return server


def run_server(port, host="127.0.0.1", ui_root=None):
    server = make_server(port, host, ui_root)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
