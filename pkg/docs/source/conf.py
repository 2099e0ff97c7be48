# -*- coding: utf-8 -*-
#
# pdeform documentation build configuration file.

import os
import sys

import sphinx_rtd_theme

sys.path.insert(0, os.path.abspath('../..'))

ver_file = os.path.join(os.path.abspath('../../pdeform/'), '_version.py')
with open(ver_file) as f:
    exec(f.read())
VERSION = __version__

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.doctest',
    'sphinx.ext.intersphinx',
    'sphinx.ext.todo',
    'numpydoc',
    'sphinx.ext.ifconfig',
    'sphinx.ext.viewcode',
    'sphinx.ext.napoleon',
    'sphinx.ext.mathjax',
    'sphinx_gallery.gen_gallery'
]

sphinx_gallery_conf = {
    # path to the example scripts
    'examples_dirs': '../../example',
    # path where to save gallery generated examples
    'gallery_dirs': 'auto_examples'}

# numpydoc and napoleon both read the Google style sections
numpydoc_show_class_members = False

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'pdeform'
copyright = '2026, the pdeform developers'
author = 'the pdeform developers'
version = VERSION
release = VERSION

exclude_patterns = ['_build']
pygments_style = 'sphinx'

html_theme = 'sphinx_rtd_theme'
html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]
html_static_path = ['_static']
htmlhelp_basename = 'pdeformdoc'

latex_elements = {
}
latex_documents = [
    ('index', 'pdeform.tex', u'pdeform Documentation', u'the pdeform developers', 'manual'),
]

man_pages = [
    ('index', 'pdeform', u'pdeform Documentation', [u'the pdeform developers'], 1)
]

texinfo_documents = [
    ('index', 'pdeform', u'pdeform Documentation', u'the pdeform developers', 'pdeform',
     'Deformations of Poisson maps in exact arithmetic.', 'Miscellaneous'),
]

intersphinx_mapping = {'python': ('https://docs.python.org/3', None)}
