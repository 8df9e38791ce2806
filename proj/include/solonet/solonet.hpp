#pragma once

#include "solonet/corpus.hpp"
#include "solonet/error.hpp"
#include "solonet/export.hpp"
#include "solonet/ingest.hpp"
#include "solonet/metrics.hpp"
#include "solonet/network.hpp"
#include "solonet/note_event.hpp"
#include "solonet/null_model.hpp"
#include "solonet/score.hpp"
#include "solonet/walker.hpp"
