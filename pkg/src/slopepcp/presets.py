"""Preset dataset specs stored as key-value text files.

File schema (one `key = value` per line, `#` starts a comment):

    kind = noise | clustered
    seed = <u64>                       required
    n = <int>, d = <int>               noise only
    cluster = COUNT | C1,...,Cd | S    clustered; repeatable. S is either a
                                       single half-width or one per dimension.
    noise = <int>                      clustered: uniform background count
"""

from __future__ import annotations

from pathlib import Path

from .data import ClusterDef, ClusterSpec, DataError, Dataset, gen_clustered, gen_uniform_noise

PRESET_DIR = Path(__file__).parent / "presets"


def available_presets() -> list[str]:
    return sorted(p.stem for p in PRESET_DIR.glob("*.txt"))


def _parse_lines(text: str) -> list[tuple[str, str]]:
    pairs = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DataError(f"malformed preset line: {line!r}")
        key, value = line.split("=", 1)
        pairs.append((key.strip(), value.strip()))
    return pairs


def _parse_cluster(value: str) -> ClusterDef:
    parts = [p.strip() for p in value.split("|")]
    if len(parts) != 3:
        raise DataError(f"cluster line needs 'count | centers | spread': {value!r}")
    count = int(parts[0])
    center = tuple(float(c) for c in parts[1].split(","))
    spread_vals = [float(s) for s in parts[2].split(",")]
    if len(spread_vals) == 1:
        spread = tuple(spread_vals * len(center))
    else:
        spread = tuple(spread_vals)
    return ClusterDef(count=count, center=center, spread=spread)


def load_preset(name: str, seed: int | None = None) -> Dataset:
    """Generate the dataset for a named preset; seed overrides the file's."""
    path = PRESET_DIR / f"{name}.txt"
    if not path.is_file():
        raise DataError(
            f"unknown preset {name!r}; available: {', '.join(available_presets())}"
        )
    pairs = _parse_lines(path.read_text())
    kv = {k: v for k, v in pairs if k != "cluster"}
    clusters = tuple(_parse_cluster(v) for k, v in pairs if k == "cluster")

    kind = kv.get("kind")
    file_seed = int(kv.get("seed", "0"))
    use_seed = file_seed if seed is None else seed
    if kind == "noise":
        return gen_uniform_noise(int(kv["n"]), int(kv["d"]), use_seed)
    if kind == "clustered":
        spec = ClusterSpec(clusters=clusters, noise_count=int(kv.get("noise", "0")))
        return gen_clustered(spec, use_seed)
    raise DataError(f"preset {name!r}: unknown kind {kind!r}")
