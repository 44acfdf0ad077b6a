#pragma once

// Umbrella header for the divisor prime graph spectra library.

#include "divspec/energy.hpp"
#include "divspec/graph.hpp"
#include "divspec/linalg.hpp"
#include "divspec/numtheory.hpp"
#include "divspec/verify.hpp"
