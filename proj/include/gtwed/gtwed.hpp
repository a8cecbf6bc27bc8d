#pragma once

#include "gtwed/audit.hpp"
#include "gtwed/engine.hpp"
#include "gtwed/error.hpp"
#include "gtwed/io.hpp"
#include "gtwed/metric.hpp"
#include "gtwed/oracle.hpp"
#include "gtwed/sequence.hpp"
