#pragma once

#include "casekit/core.hpp"
#include "casekit/error.hpp"
#include "casekit/evaluation.hpp"
#include "casekit/io.hpp"
#include "casekit/retrieval.hpp"
#include "casekit/similarity.hpp"
#include "casekit/stats.hpp"
#include "casekit/text.hpp"
