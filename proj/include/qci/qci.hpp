#pragma once

// Convenience header pulling in the whole library.

#include "errors.hpp"
#include "numkit.hpp"
#include "qstate.hpp"
#include "superop.hpp"
#include "cohinfo.hpp"
#include "channels.hpp"
#include "channel_io.hpp"
#include "random.hpp"
#include "sweep.hpp"
#include "verify.hpp"
