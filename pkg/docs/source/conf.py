# Configuration file for the Sphinx documentation builder.
#
# This file only contains a selection of the most common options. For a full
# list see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

from relturan import __version__

# -- Project information -----------------------------------------------------

project = "relturan"
copyright = "2024, relturan developers"
author = "relturan developers"

# The full version, including alpha/beta/rc tags
release = __version__


# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.coverage",
    "sphinx.ext.napoleon",
    "sphinx_rtd_theme",
    "sphinx.ext.todo",
    "sphinx.ext.autosummary",
    "sphinx.ext.mathjax",
    "sphinx_argparse_cli",
    "myst_parser",
]

myst_enable_extensions = ["dollarmath"]

templates_path = ["_templates"]

exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]

# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_rtd_theme"

root_doc = "index"
autoclass_content = "both"
autodoc_member_order = "bysource"

html_theme_options = {
    "display_version": True,
}

latex_documents = [
    (
        root_doc,
        "relturan.tex",
        "relturan",
        author,
        "manual",
    ),
]
