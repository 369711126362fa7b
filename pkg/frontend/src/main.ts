import { ApiClient } from "./api.js";
import { mountStudio } from "./dom.js";
import { StudioStore } from "./store.js";

async function boot(): Promise<void> {
  const root = document.getElementById("studio");
  if (!root) throw new Error("missing #studio mount point");
  const api = new ApiClient("");
  const listing = await api.listDatasets();
  const datasetId = listing.datasets[0]?.id;
  const reqsId = listing.requirement_sets[0]?.id;
  if (!datasetId || !reqsId) {
    root.textContent = "The service has no datasets loaded.";
    return;
  }
  const store = new StudioStore(api, datasetId, reqsId);
  mountStudio(root, store);
  await store.load();
}

void boot();
