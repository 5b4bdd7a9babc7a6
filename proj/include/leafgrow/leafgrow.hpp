#pragma once

#include "leafgrow/analysis.hpp"
#include "leafgrow/branching.hpp"
#include "leafgrow/error.hpp"
#include "leafgrow/growth.hpp"
#include "leafgrow/inference.hpp"
#include "leafgrow/rng.hpp"
#include "leafgrow/tree.hpp"
