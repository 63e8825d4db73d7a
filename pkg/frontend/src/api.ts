// Typed client for the consultation API. All endpoints live under
// /api/v1/; the base URL is only needed when the page is not served by
// the API process itself (tests).

export interface CatalogEntry {
  id: string;
  display_name: string;
}

export interface Suggestion {
  disease_id: string;
  display_name: string;
  score: number;
  matched_symptom_ids: string[];
  care_treatment: string;
  if_untreated: string;
}

export interface DiseaseResult {
  disease_id: string;
  display_name: string;
  care_treatment: string;
  if_untreated: string;
}

interface ErrorBody {
  code?: string;
  message?: string;
  offending_ids?: string[];
}

export class ApiRequestError extends Error {
  readonly status: number;
  readonly code: string;
  readonly offendingIds: string[];

  constructor(status: number, body: ErrorBody) {
    super(body.message ?? `request failed with status ${status}`);
    this.name = "ApiRequestError";
    this.status = status;
    this.code = body.code ?? "bad_request";
    this.offendingIds = body.offending_ids ?? [];
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  if (!response.ok) {
    let body: ErrorBody = {};
    try {
      body = await response.json();
    } catch {
      // non-JSON error body; the status alone has to do
    }
    throw new ApiRequestError(response.status, body);
  }
  return response.json() as Promise<T>;
}

function post<T>(url: string, payload: unknown): Promise<T> {
  return request<T>(url, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(payload),
  });
}

export class ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  fetchSymptoms(): Promise<CatalogEntry[]> {
    return request(`${this.baseUrl}/api/v1/symptoms`);
  }

  fetchDiseases(): Promise<CatalogEntry[]> {
    return request(`${this.baseUrl}/api/v1/diseases`);
  }

  consultBySymptoms(symptomIds: string[]): Promise<{ suggestions: Suggestion[] }> {
    return post(`${this.baseUrl}/api/v1/consult/symptoms`, { symptom_ids: symptomIds });
  }

  consultByDiseases(diseaseIds: string[]): Promise<{ results: DiseaseResult[] }> {
    return post(`${this.baseUrl}/api/v1/consult/disease`, { disease_ids: diseaseIds });
  }
}
