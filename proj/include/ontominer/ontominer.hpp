#pragma once

#include "ontominer/clausifier.hpp"
#include "ontominer/error.hpp"
#include "ontominer/kb.hpp"
#include "ontominer/miner.hpp"
#include "ontominer/output.hpp"
#include "ontominer/program.hpp"
#include "ontominer/rational.hpp"
#include "ontominer/reasoner.hpp"
