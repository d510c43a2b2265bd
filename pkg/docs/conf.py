#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# Sphinx configuration for the Popular Sumset Toolkit documentation.
#
# Only values that differ from the Sphinx defaults are set here.

import sys
import os

from pkg_resources import get_distribution

# Make the package importable for autodoc without installing it.
sys.path.insert(0, os.path.abspath('..'))

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinx.ext.doctest',
    'sphinx.ext.todo',
    'sphinx.ext.coverage',
    'sphinx.ext.mathjax',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'popsumkit'
copyright = '2026, Popular Sumset Toolkit developers'
author = 'Popular Sumset Toolkit developers'

version = get_distribution(project).version
release = version

exclude_patterns = ['_build', 'newsfragments']

# Backticks refer to Python objects, as in the docstrings.
default_role = 'py:obj'

pygments_style = 'sphinx'
todo_include_todos = True

# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_static_path = ['_static']
htmlhelp_basename = 'popsumkitdoc'

# -- Options for other builders -------------------------------------------

latex_documents = [
    (master_doc, 'popsumkit.tex', 'Popular Sumset Toolkit Documentation',
     author, 'manual'),
]

man_pages = [
    (master_doc, 'popsumkit', 'Popular Sumset Toolkit Documentation',
     [author], 1)
]

# -- Extension configuration ----------------------------------------------

napoleon_include_special_with_doc = True
