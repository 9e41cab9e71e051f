#pragma once

#include "pisum/asymptotics.hpp"
#include "pisum/catalog.hpp"
#include "pisum/constants.hpp"
#include "pisum/error.hpp"
#include "pisum/expr.hpp"
#include "pisum/gfunction.hpp"
#include "pisum/identities.hpp"
#include "pisum/jet.hpp"
#include "pisum/named_constants.hpp"
#include "pisum/numerics.hpp"
#include "pisum/shape.hpp"
#include "pisum/sigma.hpp"
