#ifndef OPERT_OPERT_HPP
#define OPERT_OPERT_HPP

#include "opert/banded.hpp"
#include "opert/error.hpp"
#include "opert/families.hpp"
#include "opert/geronimus.hpp"
#include "opert/jacobi.hpp"
#include "opert/moments.hpp"
#include "opert/onethree.hpp"
#include "opert/polynomial.hpp"
#include "opert/recurrence.hpp"
#include "opert/scalar.hpp"
#include "opert/symmetric.hpp"

#endif  // OPERT_OPERT_HPP
