#pragma once

#include "gvbound/acsv.hpp"
#include "gvbound/count.hpp"
#include "gvbound/curve.hpp"
#include "gvbound/errors.hpp"
#include "gvbound/numeric.hpp"
#include "gvbound/polynomial.hpp"
#include "gvbound/rate.hpp"
#include "gvbound/sticky.hpp"
#include "gvbound/synthesis.hpp"
#include "gvbound/verify.hpp"
