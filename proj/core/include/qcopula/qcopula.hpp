#pragma once

#include "qcopula/choi.hpp"
#include "qcopula/copula.hpp"
#include "qcopula/error.hpp"
#include "qcopula/json_io.hpp"
#include "qcopula/matcore.hpp"
#include "qcopula/pmetric.hpp"
#include "qcopula/sinkhorn.hpp"
#include "qcopula/states.hpp"
