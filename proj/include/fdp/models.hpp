#ifndef FDP_MODELS_HPP_
#define FDP_MODELS_HPP_

#include "fdp/models/classifier.hpp"
#include "fdp/models/logistic.hpp"
#include "fdp/models/mlp.hpp"
#include "fdp/models/spec.hpp"
#include "fdp/models/tree.hpp"

#endif  // FDP_MODELS_HPP_
