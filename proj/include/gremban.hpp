#pragma once

#include "gremban/error.hpp"
#include "gremban/signed_graph.hpp"
#include "gremban/expansion.hpp"
#include "gremban/matrix.hpp"
#include "gremban/operators.hpp"
#include "gremban/spectral.hpp"
#include "gremban/clustering.hpp"
#include "gremban/generators.hpp"
#include "gremban/metrics.hpp"
#include "gremban/dynamics.hpp"
#include "gremban/walks.hpp"
#include "gremban/io.hpp"
#include "gremban/sweep.hpp"
