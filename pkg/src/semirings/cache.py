"""On-disk cache of canonical semigroup tables.

One text file per (order, constraint, mode).  The first line is a JSON
header carrying the engine version and a SHA-256 digest of the body; the
body holds one canonical table per line in ``OpTable.__str__`` form.  A
file whose header does not match is ignored and rewritten.
"""

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

from . import __version__
from .tables import OpTable

log = logging.getLogger(__name__)

ENV_VAR = "SEMIRINGS_CACHE_DIR"


def default_cache_dir():
    value = os.environ.get(ENV_VAR)
    return Path(value) if value else None


def cache_path(cache_dir, n, c, mode):
    return Path(cache_dir) / f"semigroups-n{n}-{c.label()}-{mode.value}.txt"


def _header(n, c, mode, body):
    return {
        "engine": __version__,
        "n": n,
        "constraint": c.label(),
        "mode": mode.value,
        "sha256": hashlib.sha256(body).hexdigest(),
    }


def render(n, c, mode, tables):
    body = "".join(f"{t}\n" for t in tables).encode()
    header = json.dumps(_header(n, c, mode, body), sort_keys=True).encode()
    return header + b"\n" + body


def parse(data, n, c, mode):
    """Tables stored in ``data``, or None if the header does not validate."""
    head, sep, body = data.partition(b"\n")
    if not sep:
        return None
    try:
        header = json.loads(head)
    except ValueError:
        return None
    if header != _header(n, c, mode, body):
        return None
    tables = []
    for line in body.decode().splitlines():
        rows = [[int(ch) for ch in row] for row in line.split(";")]
        tables.append(OpTable.from_rows(rows))
    return tables


def load_or_generate(cache_dir, n, c, mode, generate):
    from .semigroups import semigroup_class

    path = cache_path(cache_dir, n, c, mode)
    if path.exists():
        tables = parse(path.read_bytes(), n, c, mode)
        if tables is not None:
            log.debug("semigroup cache hit: %s", path)
            return tuple(semigroup_class(t) for t in tables)
        log.warning("ignoring stale or corrupt cache file %s", path)
    classes = generate()
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    with os.fdopen(fd, "wb") as fh:
        fh.write(render(n, c, mode, [s.table for s in classes]))
    os.replace(tmp, path)
    return classes
