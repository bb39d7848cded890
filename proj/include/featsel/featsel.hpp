#pragma once

#include "featsel/classify.hpp"
#include "featsel/core.hpp"
#include "featsel/data.hpp"
#include "featsel/infotheory.hpp"
#include "featsel/metrics.hpp"
#include "featsel/mrmr.hpp"
#include "featsel/parallel.hpp"
#include "featsel/pipeline.hpp"
#include "featsel/rng.hpp"
#include "featsel/search.hpp"
