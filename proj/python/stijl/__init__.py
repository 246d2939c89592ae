"""Hierarchical tile mining for ordered binary matrices."""

from ._stijl import (
    BinaryMatrix,
    ContainmentError,
    CountError,
    FormatError,
    OrderingError,
    OrderingResult,
    Tile,
    TileTree,
    apply_permutation,
    baseline_length,
    find_tile,
    generate_planted,
    jaccard,
    mine,
    mondrian,
    naive_find_tile,
    naive_scan,
    parse_dense,
    parse_sparse,
    relative_compression,
    render_svg,
    scaled_entropy,
    scan,
    spectral_order,
    tile_description_length,
    tree_total_length,
)

__all__ = [name for name in dir() if not name.startswith("_")]
