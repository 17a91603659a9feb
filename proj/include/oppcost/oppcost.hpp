#pragma once

#include "oppcost/errors.hpp"
#include "oppcost/graph.hpp"
#include "oppcost/household.hpp"
#include "oppcost/path_analysis.hpp"
#include "oppcost/producer.hpp"
#include "oppcost/spanning_tree.hpp"
