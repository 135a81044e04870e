"""Legacy ASCII VTK export of velocity and pressure fields."""

from __future__ import annotations

import logging
from importlib import resources
from pathlib import Path
from typing import Callable

import numpy as np
from jinja2 import Template

from projfem.schemes.state import SchemeState

logger = logging.getLogger(__name__)

_TEMPLATE_PACKAGE = "projfem.assets.templates"
_TEMPLATE_NAME = "field.vtk.jinja"


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


class VtkWriter:
    """
    Writes one ``.vtk`` file per sampled time level.

    Only vertex values are exported: P2 midpoint and bubble dofs are dropped,
    and velocity vectors are padded with a zero z component.
    """

    def __init__(self, template_path: Path | None = None, prefix: str = "fields") -> None:
        """
        Initialize the writer.

        Args:
            template_path: Optional custom Jinja template.
            prefix: File name prefix; files are named ``{prefix}_{m:05d}.vtk``.
        """
        self._template_path = template_path
        self.prefix = prefix
        self._template: Template | None = None

    def _load_template(self) -> Template:
        if self._template is not None:
            return self._template
        if self._template_path:
            content = self._template_path.read_text(encoding="utf-8")
        else:
            try:
                with resources.as_file(
                    resources.files(_TEMPLATE_PACKAGE).joinpath(_TEMPLATE_NAME)
                ) as template_file:
                    content = Path(template_file).read_text(encoding="utf-8")
            except (TypeError, FileNotFoundError, ModuleNotFoundError):
                # Fallback for development
                fallback = Path(__file__).parent.parent / "assets" / "templates" / _TEMPLATE_NAME
                content = fallback.read_text(encoding="utf-8")
        self._template = Template(content, keep_trailing_newline=True)
        return self._template

    def render(self, state: SchemeState, title: str = "projfem") -> str:
        mesh = state.u1.space.mesh
        nv = mesh.n_vertices
        points = [f"{_fmt(x)} {_fmt(y)} 0" for x, y in mesh.vertices]
        cells = [" ".join(str(int(i)) for i in tri) for tri in mesh.triangles]
        u1 = state.u1.values[:nv]
        u2 = state.u2.values[:nv]
        velocity = [f"{_fmt(a)} {_fmt(b)} 0" for a, b in zip(u1, u2)]
        pressure = [_fmt(p) for p in np.asarray(state.p_curr.values[:nv])]
        return self._load_template().render(
            title=f"{title} m={state.m} t={_fmt(state.t)}",
            points=points,
            cells=cells,
            velocity=velocity,
            pressure=pressure,
        )

    def path_for(self, out_dir: Path, m: int) -> Path:
        return out_dir / f"{self.prefix}_{m:05d}.vtk"

    def write(self, state: SchemeState, out_dir: Path, title: str = "projfem") -> Path:
        """Write the state's fields and return the file path."""
        path = self.path_for(out_dir, state.m)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.render(state, title), encoding="utf-8")
        logger.debug("wrote %s", path)
        return path

    def series_callback(
        self, out_dir: Path, every: int, title: str = "projfem"
    ) -> tuple[list[Path], Callable[[SchemeState], None]]:
        """
        A state callback writing every ``every``-th step (m % every == 0).

        Returns:
            (list filled with written paths, callback).
        """
        written: list[Path] = []

        def on_state(state: SchemeState) -> None:
            if state.m % every == 0:
                written.append(self.write(state, out_dir, title))

        return written, on_state
