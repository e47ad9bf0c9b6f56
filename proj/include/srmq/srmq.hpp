#pragma once

#include "srmq/active_index.hpp"
#include "srmq/approx_window.hpp"
#include "srmq/command.hpp"
#include "srmq/compact_engine.hpp"
#include "srmq/error.hpp"
#include "srmq/harness.hpp"
#include "srmq/io.hpp"
#include "srmq/linked_stack.hpp"
#include "srmq/oracle.hpp"
#include "srmq/properties.hpp"
#include "srmq/realtime_engine.hpp"
#include "srmq/union_find.hpp"
#include "srmq/vanilla_engine.hpp"
#include "srmq/workload.hpp"
