#pragma once

#include "bargmann/algebra.hpp"
#include "bargmann/core.hpp"
#include "bargmann/errors.hpp"
#include "bargmann/exact.hpp"
#include "bargmann/oracle.hpp"
#include "bargmann/rational.hpp"
#include "bargmann/recurrence.hpp"
#include "bargmann/scaled_real.hpp"
#include "bargmann/sector.hpp"
#include "bargmann/tridiagonal.hpp"
