#ifndef BARESIM_HPP
#define BARESIM_HPP

#include "baresim/constraints.hpp"
#include "baresim/distributions.hpp"
#include "baresim/divergences.hpp"
#include "baresim/engine.hpp"
#include "baresim/estimators.hpp"
#include "baresim/generators.hpp"
#include "baresim/oracle.hpp"
#include "baresim/transforms.hpp"

#endif
