"""Statistically significant attribute association mining."""

from ._core import (  # noqa: F401
    Graph,
    MiningResult,
    __version__,
    association_pvalue,
    binom_pmf,
    binom_tail,
    calibrate_scale,
    cluster_significance,
    expected_edges,
    frequent_associations,
    generate_mag,
    is_significant,
    jaccard,
    load_graph,
    make_graph,
    mine,
    normal_quantile,
    prune_threshold,
    roc,
    save_graph,
)
