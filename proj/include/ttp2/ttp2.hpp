#pragma once

#include "analysis.hpp"
#include "blocks.hpp"
#include "bounds.hpp"
#include "errors.hpp"
#include "instance.hpp"
#include "matching.hpp"
#include "oracle.hpp"
#include "schedule_io.hpp"
#include "scheduler.hpp"
#include "validator.hpp"
