# Sphinx configuration for the distrank API pages.

import os
import sys

sys.path.insert(0, os.path.abspath(".."))
import distrank

extensions = ["sphinx.ext.autodoc", "sphinx.ext.doctest"]

source_suffix = ".rst"
master_doc = "index"

project = "distrank"
version = "1.0"
release = "1.0.0"

exclude_patterns = ["_build"]
pygments_style = "sphinx"

htmlhelp_basename = "distrankdoc"
latex_documents = [
  ("index", "distrank.tex", "distrank Documentation", "distrank developers",
   "manual"),
]

# Class docstrings and __init__ docstrings both describe constructor arguments
autoclass_content = "both"
