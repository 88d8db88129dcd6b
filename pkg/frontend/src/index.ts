export * from "./schemas.js";
export * from "./client.js";
export * from "./trialFlow.js";
export * from "./views.js";
