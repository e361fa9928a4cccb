#pragma once

// Umbrella header.

#include <orbk/types.hpp>
#include <orbk/errors.hpp>
#include <orbk/exact_linalg.hpp>
#include <orbk/lp.hpp>
#include <orbk/fourier_motzkin.hpp>
#include <orbk/polyhedra.hpp>
#include <orbk/parallel.hpp>
#include <orbk/report.hpp>
#include <orbk/toric.hpp>
#include <orbk/gkm.hpp>
#include <orbk/chart.hpp>
#include <orbk/oracle.hpp>
#include <orbk/json_io.hpp>
#include <orbk/svg.hpp>
#include <orbk/cli.hpp>
