#ifndef FDP_SELECTION_HPP_
#define FDP_SELECTION_HPP_

#include "fdp/selection/mrmr.hpp"
#include "fdp/selection/mutual_information.hpp"
#include "fdp/selection/ranking.hpp"
#include "fdp/selection/rfe.hpp"
#include "fdp/selection/svm.hpp"
#include "fdp/selection/sweep.hpp"

#endif  // FDP_SELECTION_HPP_
