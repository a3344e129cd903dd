#pragma once

#include "fragsim/banded.hpp"
#include "fragsim/closed_form.hpp"
#include "fragsim/config.hpp"
#include "fragsim/constants.hpp"
#include "fragsim/errors.hpp"
#include "fragsim/fock.hpp"
#include "fragsim/interference.hpp"
#include "fragsim/modes.hpp"
#include "fragsim/quadrature.hpp"
#include "fragsim/rng.hpp"
#include "fragsim/sweep.hpp"
#include "fragsim/trap.hpp"
