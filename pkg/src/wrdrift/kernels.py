"""Hot loops, compiled when the Cython extension is available.

``BACKEND`` names the implementation picked at import: ``"cython"`` when
``_kernels`` was built, otherwise ``"python"``.  :func:`use_backend` switches
at runtime for benchmarks and equivalence tests.
"""

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = ""
lag_response = _kernels_py.lag_response
sliding_slope = _kernels_py.sliding_slope


def available_backends() -> list[str]:
    return ["python"] if _compiled is None else ["cython", "python"]


def use_backend(name: str) -> None:
    global BACKEND, lag_response, sliding_slope
    if name == "cython":
        if _compiled is None:
            raise ImportError("wrdrift._kernels is not built; run `pip install -e .`")
        impl = _compiled
    elif name == "python":
        impl = _kernels_py
    else:
        raise ValueError(f"unknown kernel backend {name!r}")
    BACKEND = name
    lag_response = impl.lag_response
    sliding_slope = impl.sliding_slope


use_backend(available_backends()[0])
