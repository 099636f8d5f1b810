#ifndef FORMALFLOWS_FORMALFLOWS_HPP
#define FORMALFLOWS_FORMALFLOWS_HPP

// Umbrella header: exact arithmetic for the group of formal self-maps of
// K^d fixing 0 -- composition, inversion, integer/fractional/c-adic
// iteration, and the sum-function calculus behind them.

#include "formalflows/blockmatrix.hpp"
#include "formalflows/cadic.hpp"
#include "formalflows/error.hpp"
#include "formalflows/fraciter.hpp"
#include "formalflows/map.hpp"
#include "formalflows/monomial.hpp"
#include "formalflows/parse.hpp"
#include "formalflows/rho.hpp"
#include "formalflows/ring.hpp"
#include "formalflows/series.hpp"
#include "formalflows/sumfn.hpp"

#endif
