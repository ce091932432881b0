#pragma once
#include "ebcm/analysis.hpp"
#include "ebcm/dlm.hpp"
#include "ebcm/experiments.hpp"
#include "ebcm/message.hpp"
#include "ebcm/optics.hpp"
#include "ebcm/oracles.hpp"
#include "ebcm/random.hpp"
#include "ebcm/records.hpp"
#include "ebcm/source.hpp"
#include "ebcm/units.hpp"
