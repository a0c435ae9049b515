#pragma once

#include "qubit.hpp"
#include "rng.hpp"
#include "record.hpp"
#include "protocol.hpp"
#include "adversaries.hpp"
#include "sweep.hpp"
#include "verify.hpp"
