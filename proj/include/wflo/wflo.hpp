#pragma once

#include "wflo/cases.hpp"
#include "wflo/evaluation.hpp"
#include "wflo/ga.hpp"
#include "wflo/genome.hpp"
#include "wflo/io.hpp"
#include "wflo/layout.hpp"
#include "wflo/optimizer.hpp"
#include "wflo/qlearning.hpp"
#include "wflo/rng.hpp"
#include "wflo/scenario.hpp"
#include "wflo/wake.hpp"
