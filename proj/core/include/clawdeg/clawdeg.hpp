#pragma once

#include "clawdeg/approxdeg.hpp"
#include "clawdeg/errors.hpp"
#include "clawdeg/lpsolver.hpp"
#include "clawdeg/multisym.hpp"
#include "clawdeg/poly.hpp"
#include "clawdeg/properties.hpp"
#include "clawdeg/querypoly.hpp"
#include "clawdeg/rational.hpp"
#include "clawdeg/reductions.hpp"
