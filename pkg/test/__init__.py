# Initialisation for mohavere tests package
#
# Copyright (C) 2026 The mohavere authors
#
# Licensed under the GNU General Public Licence v.3.0
#
