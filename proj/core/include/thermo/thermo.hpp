#pragma once

#include "thermo/error.hpp"
#include "thermo/gibbs.hpp"
#include "thermo/local_pressure.hpp"
#include "thermo/matrix.hpp"
#include "thermo/measures.hpp"
#include "thermo/potential.hpp"
#include "thermo/pressure.hpp"
#include "thermo/symbolic.hpp"
