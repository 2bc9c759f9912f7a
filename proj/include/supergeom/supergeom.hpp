#pragma once

#include "cohomology.hpp"
#include "expansion.hpp"
#include "grassmann.hpp"
#include "groebner.hpp"
#include "hilbert.hpp"
#include "koszul.hpp"
#include "picard.hpp"
#include "resolution.hpp"
#include "saturation.hpp"
#include "smooth.hpp"
#include "supermatrix.hpp"
#include "superpoly.hpp"
