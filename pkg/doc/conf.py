# Sphinx configuration for the mohavere documentation
#
# Copyright (C) 2026 The mohavere authors
#
# This file is part of mohavere, colloquial Persian standardisation.
#
# mohavere is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# mohavere is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with mohavere. If not, see <http://www.gnu.org/licenses/gpl.html>.

import os
import re
import sys

root = os.path.abspath('..')
sys.path.insert(0, root)

# version, as declared in the package
with open(os.path.join(root, 'mohavere', '__init__.py'), encoding='utf-8') as fh:
    release = re.search(r"^__version__ = '([^']+)'", fh.read(), re.M).group(1)
version = '.'.join(release.split('.')[:2])

project = 'mohavere'
author = 'The mohavere authors'
copyright = f'2026, {author}'

extensions = ['sphinx.ext.autodoc',
              'sphinx_autodoc_typehints']
autodoc_member_order = 'bysource'

master_doc = 'index'
language = 'en'
exclude_patterns = ['_build']
pygments_style = 'sphinx'

html_theme = 'sphinx_rtd_theme'
htmlhelp_basename = 'mohaveredoc'

# the command-line reference doubles as the manual page
man_pages = [('command-line', 'mohavere', 'standardise colloquial Persian text', [author], 1)]
