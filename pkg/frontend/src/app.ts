// Single-page consultation client: a symptom tab and a disease tab over
// one shared result panel. The UI does no scoring or ordering of its
// own; suggestion panels appear exactly in response-array order.

import {
  ApiClient,
  CatalogEntry,
  DiseaseResult,
  Suggestion,
} from "./api.js";

type Mode = "symptoms" | "diseases";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export async function initApp(
  root: HTMLElement,
  client: ApiClient = new ApiClient(),
): Promise<void> {
  const selected: Record<Mode, Set<string>> = {
    symptoms: new Set(),
    diseases: new Set(),
  };
  const symptomNames = new Map<string, string>();
  let mode: Mode = "symptoms";
  let consultSeq = 0;
  let inFlight = false;

  root.textContent = "";

  const header = el("header");
  header.append(el("h1", "", "MatES"));
  header.append(el("p", "tagline",
    "Maternal care consultation for health extension workers"));

  const banner = el("div", "banner");
  banner.setAttribute("role", "alert");
  banner.hidden = true;
  const bannerText = el("span", "banner-text");
  const retryButton = el("button", "retry", "Retry");
  retryButton.hidden = true;
  banner.append(bannerText, retryButton);

  const showBanner = (message: string, withRetry = false): void => {
    bannerText.textContent = message;
    retryButton.hidden = !withRetry;
    banner.hidden = false;
  };
  const clearBanner = (): void => {
    banner.hidden = true;
  };

  const tabs = el("nav", "tabs");
  const tabButtons = new Map<Mode, HTMLButtonElement>();
  const panels = new Map<Mode, HTMLElement>();
  const grids = new Map<Mode, HTMLFieldSetElement>();
  const consultButtons = new Map<Mode, HTMLButtonElement>();

  const tabDefs: Array<[Mode, string, string]> = [
    ["symptoms", "By symptoms", "Symptom checklist"],
    ["diseases", "By disease", "Disease checklist"],
  ];

  const refreshButtons = (): void => {
    for (const [m, button] of consultButtons) {
      button.disabled = inFlight || selected[m].size === 0;
    }
  };

  const setMode = (next: Mode): void => {
    mode = next;
    for (const [m, button] of tabButtons) {
      button.classList.toggle("active", m === next);
      button.setAttribute("aria-selected", String(m === next));
    }
    for (const [m, panel] of panels) {
      panel.hidden = m !== next;
    }
  };

  const results = el("section", "results");
  results.setAttribute("aria-live", "polite");

  const renderSection = (parent: HTMLElement, heading: string, text: string): void => {
    parent.append(el("h3", "section-heading", heading));
    parent.append(el("p", "section-text", text));
  };

  const renderSuggestions = (suggestions: Suggestion[]): void => {
    results.textContent = "";
    if (suggestions.length === 0) {
      results.append(el("p", "notice", "No matching disease for the selected symptoms."));
      return;
    }
    for (const item of suggestions) {
      const card = el("article", "suggestion");
      const title = el("h2");
      title.append(item.display_name, " ");
      title.append(el("span", "score", `score ${item.score}`));
      card.append(title);

      const matched = el("p", "matched", "Matched: ");
      item.matched_symptom_ids.forEach((id, i) => {
        if (i > 0) matched.append(", ");
        matched.append(el("mark", "", symptomNames.get(id) ?? id));
      });
      card.append(matched);

      renderSection(card, "Care and Treatment", item.care_treatment);
      renderSection(card, "If not treated", item.if_untreated);
      results.append(card);
    }
  };

  const renderResults = (items: DiseaseResult[]): void => {
    results.textContent = "";
    for (const item of items) {
      const card = el("article", "suggestion");
      card.append(el("h2", "", item.display_name));
      renderSection(card, "Care and Treatment", item.care_treatment);
      renderSection(card, "If not treated", item.if_untreated);
      results.append(card);
    }
  };

  const consult = async (m: Mode): Promise<void> => {
    const ids = gridOrder(m).filter((id) => selected[m].has(id));
    if (ids.length === 0 || inFlight) return;
    const seq = ++consultSeq;
    inFlight = true;
    refreshButtons();
    clearBanner();
    try {
      if (m === "symptoms") {
        const body = await client.consultBySymptoms(ids);
        if (seq === consultSeq) renderSuggestions(body.suggestions);
      } else {
        const body = await client.consultByDiseases(ids);
        if (seq === consultSeq) renderResults(body.results);
      }
    } catch (err) {
      if (seq === consultSeq) {
        showBanner(err instanceof Error ? err.message : String(err));
      }
    } finally {
      if (seq === consultSeq) {
        inFlight = false;
        refreshButtons();
      }
    }
  };

  const gridOrders = new Map<Mode, string[]>();
  const gridOrder = (m: Mode): string[] => gridOrders.get(m) ?? [];

  const fillGrid = (m: Mode, entries: CatalogEntry[]): void => {
    const grid = grids.get(m)!;
    grid.textContent = "";
    gridOrders.set(m, entries.map((entry) => entry.id));
    for (const entry of entries) {
      const label = el("label", "choice");
      const box = el("input") as HTMLInputElement;
      box.type = "checkbox";
      box.value = entry.id;
      box.addEventListener("change", () => {
        if (box.checked) selected[m].add(entry.id);
        else selected[m].delete(entry.id);
        refreshButtons();
      });
      label.append(box, el("span", "", entry.display_name));
      grid.append(label);
    }
  };

  const loadCatalogs = async (): Promise<void> => {
    clearBanner();
    try {
      const [symptoms, diseases] = await Promise.all([
        client.fetchSymptoms(),
        client.fetchDiseases(),
      ]);
      symptomNames.clear();
      for (const entry of symptoms) symptomNames.set(entry.id, entry.display_name);
      fillGrid("symptoms", symptoms);
      fillGrid("diseases", diseases);
    } catch (err) {
      showBanner(
        err instanceof Error ? err.message : "Could not reach the server.",
        true,
      );
    }
  };

  for (const [m, tabLabel, gridLabel] of tabDefs) {
    const tab = el("button", "tab", tabLabel);
    tab.addEventListener("click", () => setMode(m));
    tabButtons.set(m, tab);
    tabs.append(tab);

    const panel = el("section", "panel");
    const grid = el("fieldset", "grid") as HTMLFieldSetElement;
    grid.setAttribute("aria-label", gridLabel);
    grids.set(m, grid);

    const button = el("button", "consult", "Consult");
    button.disabled = true;
    button.addEventListener("click", () => void consult(m));
    consultButtons.set(m, button);

    panel.append(grid, button);
    panels.set(m, panel);
  }

  retryButton.addEventListener("click", () => void loadCatalogs());

  root.append(header, banner, tabs, ...panels.values(), results);
  setMode(mode);
  refreshButtons();
  await loadCatalogs();
}
