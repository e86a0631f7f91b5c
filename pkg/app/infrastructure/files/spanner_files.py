import csv
import io
import re
from pathlib import Path
from typing import Union

from app.domain.entities.spanner import EdgeTag, Spanner, SpannerEdge
from app.domain.exceptions import PointFormatError

HEADER = ["u", "v", "weight", "tags", "orientation"]
_COUNT_LINE = re.compile(r"#\s*n\s*=\s*(\d+)")


def _orientation(edge: SpannerEdge) -> str:
    return "" if edge.head is None else f"{edge.tail}->{edge.head}"


def spanner_to_csv(spanner: Spanner) -> str:
    """CSV рёбер; первая строка '# n=<число точек>'"""
    out = io.StringIO()
    out.write(f"# n={spanner.n}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(HEADER)
    for e in spanner:
        writer.writerow([e.u, e.v, repr(e.weight), "|".join(sorted(t.value for t in e.tags)), _orientation(e)])
    return out.getvalue()


def spanner_from_csv(text: str) -> Spanner:
    lines = text.splitlines()
    if not lines:
        raise PointFormatError("empty spanner file")
    match = _COUNT_LINE.fullmatch(lines[0].strip())
    if not match:
        raise PointFormatError("spanner file must start with '# n=<count>'")
    spanner = Spanner(int(match.group(1)))
    for row in csv.DictReader(io.StringIO("\n".join(lines[1:]))):
        try:
            u, v = int(row["u"]), int(row["v"])
            tags = [EdgeTag(t) for t in row["tags"].split("|") if t]
            head = int(row["orientation"].split("->")[1]) if row.get("orientation") else None
            weight = float(row["weight"])
        except (KeyError, ValueError, IndexError) as e:
            raise PointFormatError(f"bad spanner row {row!r}: {e}") from e
        if not (0 <= u < spanner.n and 0 <= v < spanner.n):
            raise PointFormatError(f"edge ({u}, {v}) outside 0..{spanner.n - 1}")
        spanner.add(u, v, weight, tags, head)
    return spanner


def spanner_to_dot(spanner: Spanner) -> str:
    lines = ["graph spanner {"]
    lines.extend(f"  {i};" for i in range(spanner.n))
    for e in spanner:
        tags = "|".join(sorted(t.value for t in e.tags))
        lines.append(
            f'  {e.u} -- {e.v} [weight={e.weight!r}, tags="{tags}", orientation="{_orientation(e)}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_spanner(spanner: Spanner, path: Union[str, Path]) -> None:
    path = Path(path)
    text = spanner_to_dot(spanner) if path.suffix.lower() == ".dot" else spanner_to_csv(spanner)
    path.write_text(text)


def read_spanner(path: Union[str, Path]) -> Spanner:
    return spanner_from_csv(Path(path).read_text())
