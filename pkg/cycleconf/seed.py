"""
Seed script for the fixture corpus.
Writes every named fixture graph as one graph6 line, with the names in the
same order in a sibling .names file so the graph6 file stays census input.
"""
import logging
import sys
from pathlib import Path

from cycleconf.app.domain.families import fixture_corpus
from cycleconf.app.domain.graph_io import to_graph6

logger = logging.getLogger(__name__)

DEFAULT_PATH = Path("fixtures.g6")


def seed_fixtures(path: Path = DEFAULT_PATH) -> int:
    """Write the corpus to `path` and return the number of graphs written."""
    corpus = fixture_corpus()
    lines = [to_graph6(g) for g in corpus.values()]
    path.write_text("\n".join(lines) + "\n")
    path.with_suffix(".names").write_text("\n".join(corpus) + "\n")
    logger.info(f"Wrote {len(lines)} fixture graphs to {path}")
    return len(lines)


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    seed_fixtures(Path(sys.argv[1]) if len(sys.argv) > 1 else DEFAULT_PATH)
