"""Comment areas and the filtered comment cocoons built on top of them.

The virtual edges linking a spreading target to the commenters of its source
are never stored; they are derived from the comment layer when a spreading
event needs them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import SocialGraph
from .recommend import check_ra, viewpoint_filter


@dataclass(frozen=True)
class CommentArea:
    source: int
    commenters: tuple[int, ...]


@dataclass(frozen=True)
class CocoonStructure:
    source: int
    target: int
    filtered_commenters: tuple[int, ...]
    # size of the comment area the filter started from (target excluded)
    area_size: int


def comment_area(graph: SocialGraph, source: int) -> CommentArea:
    """All nodes holding a comment edge pointing at ``source``."""
    return CommentArea(int(source), tuple(graph.comment_in[source]))


def _candidates(area: CommentArea, target: int) -> list[int]:
    return [c for c in area.commenters if c != target]


def filter_cocoon(area: CommentArea, target: int, graph: SocialGraph, ra: float) -> list[int]:
    """The commenters of ``area`` that the target gets to see at accuracy ``ra``."""
    if target == area.source:
        raise ValueError("target must differ from the comment area's source")
    return viewpoint_filter(graph, target, _candidates(area, target), check_ra(ra))


def build_hcac(graph: SocialGraph, source: int, target: int, ra: float) -> CocoonStructure:
    area = comment_area(graph, source)
    kept = filter_cocoon(area, target, graph, ra)
    return CocoonStructure(int(source), int(target), tuple(kept), len(_candidates(area, target)))
