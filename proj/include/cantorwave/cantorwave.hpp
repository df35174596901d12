#pragma once

#include "cantorwave/cantor.hpp"
#include "cantorwave/fixedpoint.hpp"
#include "cantorwave/json_io.hpp"
#include "cantorwave/laurent.hpp"
#include "cantorwave/rational.hpp"
#include "cantorwave/solenoid.hpp"
#include "cantorwave/sparse_nullspace.hpp"
#include "cantorwave/transfer.hpp"
