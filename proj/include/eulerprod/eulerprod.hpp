#pragma once

#include "eulerprod/analytic.hpp"
#include "eulerprod/classify.hpp"
#include "eulerprod/cyclotomic.hpp"
#include "eulerprod/explicit.hpp"
#include "eulerprod/goldbach.hpp"
#include "eulerprod/newton.hpp"
#include "eulerprod/parse.hpp"
#include "eulerprod/poly.hpp"
#include "eulerprod/presets.hpp"
#include "eulerprod/primes.hpp"
#include "eulerprod/rational.hpp"
#include "eulerprod/roots.hpp"
#include "eulerprod/series.hpp"
#include "eulerprod/zetafact.hpp"
