# -*- coding: utf-8 -*-
#
# grmcweather documentation build configuration file.
import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join('..', 'src')))

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.doctest',
              'sphinx.ext.intersphinx',
              'sphinx.ext.coverage',
              'sphinx.ext.viewcode']

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'grmcweather'
copyright = '2024, grmcweather developers'
author = 'grmcweather developers'

version = ''
release = ''
language = None
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']
pygments_style = 'sphinx'
todo_include_todos = False

html_theme = 'alabaster'
html_static_path = ['.']
htmlhelp_basename = 'grmcweatherdoc'

latex_documents = [
    (master_doc, 'grmcweather.tex', 'grmcweather Documentation',
     author, 'manual'),
]

man_pages = [
    (master_doc, 'grmcweather', 'grmcweather Documentation',
     [author], 1)
]

texinfo_documents = [
    (master_doc, 'grmcweather', 'grmcweather Documentation',
     author, 'grmcweather', 'Graph-regularized matrix completion for '
     'weather station networks.', 'Miscellaneous'),
]

intersphinx_mapping = {'python': ('https://docs.python.org/3', None)}
