"""JSON readers and writers for group, digraph and coset-spec files.

Group file:  {"degree": n, "generators": [[images...], ...]}
Digraph file: {"n": n, "arcs": [[u, v], ...]}
Spec file:   {"group": <group file>, "subgroup_generators": [[images...], ...], "connector": [images...]}

All images are 0-based. Every malformed file raises an :class:`InputError`.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Mapping, Union

from arctest.algebra.perm import Perm
from arctest.algebra.permgroup import DEFAULT_MAX_ELEMENTS, PermGroup, SubgroupSet
from arctest.core.errors import DegreeMismatchError, InputError
from arctest.graphs.cosetgraph import DEFAULT_MAX_COSETS, CosetDigraphSpec
from arctest.graphs.digraph import Digraph, new_digraph

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def load_json(path: PathLike) -> Any:
    """Read a JSON document.

    Raises:
        InputError: If the file cannot be read or is not valid JSON
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno}: {exc.msg}") from exc


def _mapping(data: Any, what: str, keys: List[str]) -> Mapping[str, Any]:
    if not isinstance(data, dict):
        raise InputError(f"{what} must be a JSON object")
    missing = [key for key in keys if key not in data]
    if missing:
        raise InputError(f"{what} is missing {', '.join(missing)}")
    return data


def _int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{what} must be an integer, got {value!r}")
    return value


def parse_perm(value: Any, degree: int, what: str = "permutation") -> Perm:
    """Image list of length ``degree`` as a :class:`Perm`.

    Raises:
        InputError: If the list is not integers
        DegreeMismatchError: If its length is not ``degree``
        InvalidPermutationError: If it is not a bijection
    """
    if not isinstance(value, list):
        raise InputError(f"{what} must be a list of images")
    images = [_int(x, f"{what} image") for x in value]
    if len(images) != degree:
        raise DegreeMismatchError(len(images), degree)
    return Perm(images)


def parse_group(data: Any) -> PermGroup:
    data = _mapping(data, "group", ["degree", "generators"])
    degree = _int(data["degree"], "degree")
    if degree < 1:
        raise InputError(f"degree must be positive, got {degree}")
    if not isinstance(data["generators"], list):
        raise InputError("generators must be a list")
    gens = [parse_perm(x, degree, f"generator {i}") for i, x in enumerate(data["generators"])]
    return PermGroup(degree, gens)


def parse_digraph(data: Any) -> Digraph:
    data = _mapping(data, "digraph", ["n", "arcs"])
    n = _int(data["n"], "n")
    if n < 0:
        raise InputError(f"n must be non-negative, got {n}")
    arcs = data["arcs"]
    if not isinstance(arcs, list) or not all(isinstance(arc, list) for arc in arcs):
        raise InputError("arcs must be a list of [u, v] pairs")
    return new_digraph(n, [[_int(x, "arc endpoint") for x in arc] for arc in arcs])


def parse_coset_spec(
    data: Any, max_elements: int = DEFAULT_MAX_ELEMENTS, max_cosets: int = DEFAULT_MAX_COSETS
) -> CosetDigraphSpec:
    data = _mapping(data, "coset spec", ["group", "subgroup_generators", "connector"])
    group = parse_group(data["group"])
    if not isinstance(data["subgroup_generators"], list):
        raise InputError("subgroup_generators must be a list")
    h_gens = [
        parse_perm(x, group.degree, f"subgroup generator {i}") for i, x in enumerate(data["subgroup_generators"])
    ]
    g = parse_perm(data["connector"], group.degree, "connector")
    subgroup = SubgroupSet.generated_by(group.degree, h_gens, max_elements)
    return CosetDigraphSpec(group, subgroup, g, max_elements, max_cosets)


def load_group(path: PathLike) -> PermGroup:
    group = parse_group(load_json(path))
    logger.debug("%s: degree %d, %d generators", path, group.degree, len(group.generators))
    return group


def load_digraph(path: PathLike) -> Digraph:
    digraph = parse_digraph(load_json(path))
    logger.debug("%s: %d vertices, %d arcs", path, digraph.n, digraph.arc_count)
    return digraph


def load_coset_spec(
    path: PathLike, max_elements: int = DEFAULT_MAX_ELEMENTS, max_cosets: int = DEFAULT_MAX_COSETS
) -> CosetDigraphSpec:
    return parse_coset_spec(load_json(path), max_elements, max_cosets)


def dump_digraph(digraph: Digraph) -> Dict[str, Any]:
    """The digraph file document, arcs in lexicographic order."""
    return digraph.to_json()


def dump_group(group: PermGroup) -> Dict[str, Any]:
    return {"degree": group.degree, "generators": [g.to_json() for g in group.generators]}


def dump_coset_spec(spec: CosetDigraphSpec) -> Dict[str, Any]:
    return {
        "group": dump_group(spec.group),
        "subgroup_generators": [h.to_json() for h in spec.subgroup.generators()],
        "connector": spec.connector.to_json(),
    }
