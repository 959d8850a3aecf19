#pragma once

// Umbrella header.

#include "kippen/errors.hpp"
#include "kippen/scalar.hpp"
#include "kippen/bigfloat.hpp"
#include "kippen/unipoly.hpp"
#include "kippen/multipoly.hpp"
#include "kippen/matrix.hpp"
#include "kippen/polymat.hpp"
#include "kippen/circularity.hpp"
#include "kippen/tower.hpp"
#include "kippen/moments.hpp"
#include "kippen/spectral.hpp"
#include "kippen/family.hpp"
#include "kippen/gallery.hpp"
#include "kippen/examples.hpp"
#include "kippen/matrix_io.hpp"
