// qwrabi.hpp — Umbrella header

#pragma once

#include "qwrabi/constants.hpp"
#include "qwrabi/errors.hpp"
#include "qwrabi/fock.hpp"
#include "qwrabi/jaynes_cummings.hpp"
#include "qwrabi/parameters.hpp"
#include "qwrabi/polaron.hpp"
#include "qwrabi/qfi.hpp"
#include "qwrabi/state_vector.hpp"
#include "qwrabi/sweep.hpp"
