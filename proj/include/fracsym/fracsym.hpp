#pragma once

#include "compare.hpp"
#include "csv.hpp"
#include "error.hpp"
#include "fraclap.hpp"
#include "greens1d.hpp"
#include "kernel.hpp"
#include "quadrature.hpp"
#include "rearrange.hpp"
#include "sampled.hpp"
#include "specfun.hpp"
#include "verify.hpp"
