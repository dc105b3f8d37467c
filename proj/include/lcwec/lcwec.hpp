// Umbrella header for the LC-tuned wave energy converter library.
#pragma once

#include "lcwec/csv.hpp"
#include "lcwec/freq_analysis.hpp"
#include "lcwec/model.hpp"
#include "lcwec/scenario.hpp"
#include "lcwec/sweep.hpp"
#include "lcwec/time_sim.hpp"
#include "lcwec/tuning.hpp"
