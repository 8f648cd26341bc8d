#pragma once

#include "magicbcs/gf2.hpp"
#include "magicbcs/pauli.hpp"
#include "magicbcs/bcs.hpp"
#include "magicbcs/game.hpp"
#include "magicbcs/rng.hpp"
#include "magicbcs/quantum.hpp"
#include "magicbcs/shallow.hpp"
#include "magicbcs/lightcone.hpp"
