"""Fixed oracle battery over the bundled corpus.

Each entry is ``(label, kind, inputs)`` ready for ``compare_all_depths``.
"""

from __future__ import annotations

from .closed import SafetyAutomaton
from .spec_format import Model, bundled_model
from .transducers import image_closed


def battery(model: Model | None = None) -> list[tuple[str, str, dict]]:
    m = bundled_model() if model is None else model
    c = m.closed
    out: list[tuple[str, str, dict]] = []
    for name, e in sorted(m.regsets.items()):
        out.append((f"closure:{name}", "closure", {"e": e}))
        out.append((f"empty:{name}", "empty", {"e": e}))
    for name in sorted(m.sets):
        out.append((f"closure:set:{name}", "closure", {"e": m.eval_set(m.sets[name])}))
    for name, f in sorted(c.items()):
        out.append((f"empty:{name}", "empty", {"f": f}))
    for name, t in sorted(m.transducers.items()):
        out.append((f"image:{name}", "image", {"t": t}))
    for name, e in sorted(m.regsets.items()):
        for amb in ("full", "no11", "comb"):
            out.append((f"derivative:{name}@{amb}", "derivative", {"e": e, "f": c[amb], "ambient": c[amb]}))
    t = m.transducers["embedshift"]
    y = image_closed(t)
    for stem in ("0", "1", "10"):
        piece = t.domain.intersect(SafetyAutomaton.cylinder(stem))
        out.append((f"rel_open:embedshift[{stem}]", "rel_open", {"y": y, "i": image_closed(t, piece)}))
    out.append(("rel_open:no11|point0", "rel_open", {"y": c["no11"], "i": c["point0"]}))
    out.append(("rel_open:comb|point0", "rel_open", {"y": c["comb"], "i": c["point0"]}))
    return out
