#ifndef SPECNET_SPECNET_HPP
#define SPECNET_SPECNET_HPP

#include "specnet/clustering.hpp"
#include "specnet/diagnostics.hpp"
#include "specnet/error.hpp"
#include "specnet/estimation.hpp"
#include "specnet/experiments.hpp"
#include "specnet/io.hpp"
#include "specnet/matrix.hpp"
#include "specnet/noise.hpp"
#include "specnet/parallel.hpp"
#include "specnet/rng.hpp"
#include "specnet/stats.hpp"

#endif  // SPECNET_SPECNET_HPP
