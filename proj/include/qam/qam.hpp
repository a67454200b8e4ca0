#pragma once

// Umbrella header for the quaternion associative memory library.
// The CLI front-end lives in qam/cli.hpp and is not pulled in here,
// so library users do not inherit the CLI11 dependency.

#include "qam/experiments.hpp"
#include "qam/kernel.hpp"
#include "qam/linalg.hpp"
#include "qam/models.hpp"
#include "qam/quaternion.hpp"
