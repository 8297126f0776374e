"""
File Chain (see DEVELOPER.md):
Doc Version: v1.0.0
Date Modified: 2026-10-19

- Called by: reports.py (graph command --dot), tests
- Reads from: templates/*.jinja2
- Writes to: None (callers write the returned text)
- Calls into: jinja2

Purpose: Graphviz DOT export of dual graphs with an optional fiber marked.

Blast Radius: LOW - output only, no verification result depends on it.
"""

import logging
from importlib import resources

from jinja2 import Environment, PackageLoader, Template, TemplateNotFound, select_autoescape

from zeroent import templates
from zeroent.dualgraph import DualGraph, GraphFiber
from zeroent.models import ZeroentError

_LOGGER = logging.getLogger(__name__)

J2SUFFIX = ".jinja2"
DOT_TEMPLATE = "dualgraph.dot"


def get_templates() -> list[str]:
    """get all available templates in the package"""
    return sorted(
        t.name[: -len(J2SUFFIX)]
        for t in resources.files(templates).iterdir()
        if t.name.endswith(J2SUFFIX)
    )


def load_template(name: str = DOT_TEMPLATE) -> Template:
    env = Environment(
        loader=PackageLoader("zeroent"),
        autoescape=select_autoescape(),
        trim_blocks=True,
        lstrip_blocks=True,
    )
    try:
        return env.get_template(f"{name}{J2SUFFIX}")
    except TemplateNotFound as exc:
        raise ZeroentError(f"template does not exist: {name}") from exc


def _attrs(pairs: list[tuple[str, str]]) -> str:
    return ", ".join(f'{key}="{value}"' for key, value in pairs)


def render_dot(g: DualGraph, fiber: GraphFiber | None = None) -> str:
    """DOT text; weight > 1 edges carry their weight as label, the fiber is dashed"""
    support = set(fiber.support) if fiber else set()
    marks = dict(zip(fiber.support, fiber.marks)) if fiber else {}

    vertices = []
    for v in g.vertices:
        pairs = [("style", "dashed"), ("xlabel", str(marks[v]))] if v in support else []
        vertices.append((v, _attrs(pairs)))

    edges = []
    for u, v, weight in g.edges:
        pairs = []
        if weight > 1:
            pairs.append(("label", str(weight)))
        if u in support and v in support:
            pairs.append(("style", "dashed"))
        edges.append((u, v, _attrs(pairs)))

    _LOGGER.debug("rendering %s, %d vertices, fiber %s", g.name, g.size, fiber and fiber.kodaira_label)
    return load_template().render(name=g.name, vertices=vertices, edges=edges)
