#pragma once

#include "irisattn/common/error.hpp"
#include "irisattn/common/numeric.hpp"
#include "irisattn/eval/accuracy.hpp"
#include "irisattn/eval/decisions.hpp"
#include "irisattn/eval/ensemble.hpp"
#include "irisattn/eval/pmi.hpp"
#include "irisattn/eval/roc.hpp"
#include "irisattn/eval/scores.hpp"
#include "irisattn/gaze/cluster.hpp"
#include "irisattn/gaze/fixation.hpp"
#include "irisattn/gaze/human_map.hpp"
#include "irisattn/gaze/log_parser.hpp"
#include "irisattn/gaze/transform_io.hpp"
#include "irisattn/gaze/types.hpp"
#include "irisattn/saliency/compare.hpp"
#include "irisattn/saliency/grid.hpp"
#include "irisattn/saliency/grid_io.hpp"
#include "irisattn/saliency/overlap.hpp"
#include "irisattn/saliency/resample.hpp"
