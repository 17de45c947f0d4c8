#pragma once

#include "pairdecomp/error.hpp"
#include "pairdecomp/fidelity.hpp"
#include "pairdecomp/linalg.hpp"
#include "pairdecomp/majorize.hpp"
#include "pairdecomp/matrix.hpp"
#include "pairdecomp/optimal.hpp"
#include "pairdecomp/oracle.hpp"
#include "pairdecomp/states.hpp"
#include "pairdecomp/version.hpp"
