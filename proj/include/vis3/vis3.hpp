#pragma once

#include "vis3/bundle.hpp"
#include "vis3/covariants.hpp"
#include "vis3/ellcurve.hpp"
#include "vis3/equivalence.hpp"
#include "vis3/flexconfig.hpp"
#include "vis3/genus2.hpp"
#include "vis3/io.hpp"
#include "vis3/jinvariant.hpp"
#include "vis3/theta.hpp"
#include "vis3/weierstrass.hpp"
