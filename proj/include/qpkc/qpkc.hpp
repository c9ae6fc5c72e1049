// Umbrella header.
#pragma once

#include "qpkc/bitword.hpp"
#include "qpkc/density.hpp"
#include "qpkc/ecurve.hpp"
#include "qpkc/gf2.hpp"
#include "qpkc/numtheory.hpp"
#include "qpkc/qauth.hpp"
#include "qpkc/qpke.hpp"
#include "qpkc/qsign.hpp"
#include "qpkc/qsim.hpp"
#include "qpkc/rng.hpp"
#include "qpkc/serialize.hpp"
#include "qpkc/verify.hpp"
