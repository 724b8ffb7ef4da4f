import os
from setuptools import setup

# The compiled kernel is optional: the package falls back to the pure-Python
# backend when the extension is absent or fails to build.
ext_modules = []
if os.environ.get("CASIMIR_TRACE_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/casimir_trace/_speedups.pyx"],
            language_level=3,
        )
    except Exception as exc:  # pragma: no cover - build-environment dependent
        print(f"warning: skipping compiled kernel ({exc})")

setup(ext_modules=ext_modules)
