#pragma once

#include "vcmin/bench.hpp"
#include "vcmin/cheese.hpp"
#include "vcmin/element_set.hpp"
#include "vcmin/error.hpp"
#include "vcmin/extractor.hpp"
#include "vcmin/generators.hpp"
#include "vcmin/instance.hpp"
#include "vcmin/io.hpp"
#include "vcmin/laminar.hpp"
#include "vcmin/oracle.hpp"
#include "vcmin/random.hpp"
#include "vcmin/version.hpp"
