"""Session workspace: caps, per-expression memoization, and the on-disk
lattice cache.

Cache files are JSON keyed by the canonical expression text plus the caps
that shaped the lattice, and carry a hash of the element table so a stale
or foreign file is silently recomputed.  Writes go to a temp file first and
are renamed into place, so a torn write can never be read back.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from . import exprs, mindeg
from .lattice import DEFAULT_MAX_SUBGROUPS, Subgroup, SubgroupLattice, all_subgroups
from .perms import DEFAULT_MAX_ORDER
from .presentations import DEFAULT_MAX_COSETS

CACHE_ENV = "MUDEG_CACHE_DIR"
CACHE_FORMAT = 1


def default_cache_dir():
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "mudeg"


class Workspace:
    """Caps plus memoized groups, lattices, and mu results."""

    def __init__(self, max_order=DEFAULT_MAX_ORDER,
                 max_subgroups=DEFAULT_MAX_SUBGROUPS,
                 max_cosets=DEFAULT_MAX_COSETS,
                 cache_dir=None, use_cache=True):
        self.max_order = max_order
        self.max_subgroups = max_subgroups
        self.max_cosets = max_cosets
        self.cache_dir = Path(cache_dir) if cache_dir else default_cache_dir()
        self.use_cache = use_cache
        self._groups = {}
        self._lattices = {}
        self._mus = {}

    def canonical(self, spec):
        if isinstance(spec, str):
            spec = exprs.parse_group(spec)
        return exprs.to_text(spec)

    def group(self, spec):
        key = self.canonical(spec)
        if key not in self._groups:
            self._groups[key] = exprs.build(key)
        return self._groups[key]

    def lattice(self, spec):
        key = self.canonical(spec)
        if key in self._lattices:
            return self._lattices[key]
        G = self.group(key)
        lat = None
        if self.use_cache:
            lat = self._load_cached(key, G)
        if lat is None:
            lat = all_subgroups(G, max_subgroups=self.max_subgroups,
                                max_order=self.max_order)
            if self.use_cache:
                self._store_cached(key, lat)
        self._lattices[key] = lat
        return lat

    def mu(self, spec):
        key = self.canonical(spec)
        if key not in self._mus:
            G = self.group(key)
            self._mus[key] = mindeg.mu_exact(G, self.lattice(key),
                                             max_order=self.max_order,
                                             max_subgroups=self.max_subgroups)
        return self._mus[key]

    def order(self, spec):
        return self.group(spec).order()

    # -- disk cache ----------------------------------------------------

    def _cache_path(self, key):
        raw = f"{CACHE_FORMAT}|{key}|{self.max_order}|{self.max_subgroups}"
        digest = hashlib.sha256(raw.encode()).hexdigest()[:24]
        return self.cache_dir / f"lattice-{digest}.json"

    def _load_cached(self, key, G):
        path = self._cache_path(key)
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError):
            return None
        try:
            if (data["format"] != CACHE_FORMAT or data["expr"] != key
                    or data["max_order"] != self.max_order
                    or data["max_subgroups"] != self.max_subgroups):
                return None
            tab = G.element_table(self.max_order)
            if data["element_hash"] != tab.content_hash():
                return None
            subgroups = []
            for maskhex, gens in data["subgroups"]:
                mask = int(maskhex, 16)
                subgroups.append(Subgroup(tab, mask, gens=tuple(gens)))
            return SubgroupLattice(tab, subgroups, list(data["cores"]),
                                   list(data["normal"]), list(data["classes"]))
        except (KeyError, ValueError, TypeError):
            return None

    def _store_cached(self, key, lat):
        path = self._cache_path(key)
        data = {
            "format": CACHE_FORMAT,
            "expr": key,
            "max_order": self.max_order,
            "max_subgroups": self.max_subgroups,
            "element_hash": lat.table.content_hash(),
            "subgroups": [[format(s.mask, "x"), list(s.generator_indices())]
                          for s in lat.subgroups],
            "cores": list(lat.core_ids),
            "normal": [bool(f) for f in lat.normal_flags],
            "classes": list(lat.class_ids),
        }
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(data, fh)
            os.replace(tmp, path)
        except OSError:
            pass
