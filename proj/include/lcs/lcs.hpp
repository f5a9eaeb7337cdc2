#pragma once

#include "lcs/error.hpp"
#include "lcs/rational.hpp"
#include "lcs/matrix.hpp"
#include "lcs/lie_algebra.hpp"
#include "lcs/exterior.hpp"
#include "lcs/notation.hpp"
#include "lcs/novikov.hpp"
#include "lcs/lcs_structure.hpp"
#include "lcs/construct.hpp"
#include "lcs/lattice.hpp"
#include "lcs/corpus.hpp"
