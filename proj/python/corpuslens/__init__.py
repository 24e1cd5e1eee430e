"""Rule-based sentiment, density clustering and nonparametric statistics
for discussion corpora. The heavy lifting lives in the C++ extension."""

from corpuslens._core import (  # noqa: F401
    Lexicon,
    SentimentAnalyzer,
    bh_fdr,
    canonical_aspects,
    classify,
    cliffs_delta,
    ctfidf_terms,
    dunn_posthoc,
    fallback_embed,
    fit_random_intercept,
    hdbscan_labels,
    icc,
    kruskal_eta_squared,
    kruskal_wallis,
    ks_two_sample,
    mann_whitney_u,
    match_aspects,
    tokenize,
    wilcoxon_signed_rank,
    word_frequencies,
)

__version__ = "0.1.0"


def asset_path(name):
    """Path to a packaged data asset (lexicon, stopwords), when installed
    as a wheel. Source builds should point at the repository's assets/."""
    from pathlib import Path

    candidate = Path(__file__).parent / "assets" / name
    if candidate.exists():
        return str(candidate)
    raise FileNotFoundError(f"asset {name!r} is not packaged in this build")
