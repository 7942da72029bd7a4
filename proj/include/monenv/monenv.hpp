// Umbrella header.
#pragma once

#include "monenv/core.hpp"
#include "monenv/envelopes.hpp"
#include "monenv/geometry2d.hpp"
#include "monenv/branching.hpp"
#include "monenv/oracle.hpp"
#include "monenv/quadrature.hpp"
#include "monenv/rng.hpp"
#include "monenv/io.hpp"
