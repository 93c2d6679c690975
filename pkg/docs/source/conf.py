# -*- coding: utf-8 -*-
#
# FarmGrid documentation build configuration file.

import os
import sys
sys.path.insert(0, os.path.abspath('../..'))


# -- General configuration ------------------------------------------------

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.napoleon',
              'sphinx.ext.viewcode']

# Docstrings follow the numpy layout
napoleon_google_docstring = False
napoleon_numpy_docstring = True

autodoc_member_order = 'bysource'

source_suffix = '.rst'
master_doc = 'index'

project = 'FarmGrid'
copyright = '2024, FarmGrid developers'
author = 'FarmGrid developers'

version = '1.0'
release = '1.0'

exclude_patterns = []
pygments_style = 'sphinx'


# -- Options for HTML output ----------------------------------------------

html_theme = 'alabaster'
htmlhelp_basename = 'FarmGrid'


# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'farmgrid', 'FarmGrid Documentation',
     [author], 1)
]
