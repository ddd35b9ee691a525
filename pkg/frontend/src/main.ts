import { ApiClient } from "./api.js";
import { mountApp } from "./app.js";

// same-origin by default; ?api=http://host:port points elsewhere
const base = new URLSearchParams(window.location.search).get("api") ?? "";
const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");
mountApp(root, new ApiClient(base));
