#pragma once

#include "milnor/chart.hpp"
#include "milnor/cli.hpp"
#include "milnor/comodule.hpp"
#include "milnor/groebner.hpp"
#include "milnor/poly.hpp"
#include "milnor/poly_io.hpp"
#include "milnor/presented.hpp"
#include "milnor/quotient.hpp"
#include "milnor/series.hpp"
#include "milnor/sseq.hpp"
#include "milnor/verify.hpp"
#include "milnor/zeta.hpp"
