#ifndef FDP_FDP_HPP_
#define FDP_FDP_HPP_

#include "fdp/config.hpp"
#include "fdp/data_model.hpp"
#include "fdp/error.hpp"
#include "fdp/evaluation.hpp"
#include "fdp/indicators.hpp"
#include "fdp/models.hpp"
#include "fdp/pipeline.hpp"
#include "fdp/preprocess.hpp"
#include "fdp/report.hpp"
#include "fdp/selection.hpp"
#include "fdp/synthetic.hpp"

#endif  // FDP_FDP_HPP_
